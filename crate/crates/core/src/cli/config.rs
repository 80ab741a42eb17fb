//! Job configuration files.

use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;

use crate::affine::{AlgebraTag, Matrix};
use crate::arith::rational::parse_rational;
use crate::arith::{parse_rational_function, Rational};
use crate::basis::{FormElement, Geometry};
use crate::cocycles::{AffineConnection, ProjectiveConnection};
use crate::error::{Error, Result};
use crate::structure::KnAlgebra;
use crate::wedge::{FermionModule, RepresentationData, WedgeMonomial, WedgeVector};

#[derive(Clone, Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct JobConfig {
    /// Puncture coordinates as exact rationals.
    pub punctures: Vec<String>,
    pub weight: i64,
    pub window: [i64; 2],
    /// `gl1`, `slN` or `glN`.
    pub algebra: String,
    /// Bundle rank.
    pub rank: usize,
    pub projective_connection: String,
    pub affine_connection: String,
    /// `rank x rank` one-form coefficients, or absent for the zero form.
    pub connection_form: Option<Vec<Vec<String>>>,
    /// Depth of the wedge sample monomials.
    pub depth: usize,
    pub charge: i64,
    pub seed: u64,
    pub args: Args,
}

impl Default for JobConfig {
    fn default() -> Self {
        JobConfig {
            punctures: vec!["0".into(), "1".into()],
            weight: 0,
            window: [-3, 3],
            algebra: "gl1".into(),
            rank: 1,
            projective_connection: "0".into(),
            affine_connection: "0".into(),
            connection_form: None,
            depth: 3,
            charge: 0,
            seed: 7,
            args: Args::default(),
        }
    }
}

/// Command-specific parameters.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Args {
    pub f: Option<String>,
    pub g: Option<String>,
    pub f_weight: Option<i64>,
    pub g_weight: Option<i64>,
    pub kind: Option<String>,
    pub matrix: Option<Vec<Vec<String>>>,
    pub degree: Option<i64>,
    pub puncture: Option<usize>,
    pub vector: Option<Vec<VectorTerm>>,
    pub k: Option<i64>,
    pub r: Option<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VectorTerm {
    #[serde(default = "one_string")]
    pub coefficient: String,
    #[serde(default)]
    pub prefix: Vec<i64>,
}

fn one_string() -> String {
    "1".into()
}

impl JobConfig {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: JobConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.window[0] > self.window[1] {
            return Err(Error::Config("window lower bound exceeds upper bound".into()));
        }
        if self.rank == 0 {
            return Err(Error::Config("rank must be positive".into()));
        }
        self.geometry()?;
        self.algebra_tag()?;
        Ok(())
    }

    pub fn window(&self) -> (i64, i64) {
        (self.window[0], self.window[1])
    }

    pub fn geometry(&self) -> Result<Arc<Geometry>> {
        let pts = self
            .punctures
            .iter()
            .map(|s| parse_rational(s).map_err(|e| Error::Config(format!("puncture `{s}`: {e}"))))
            .collect::<Result<Vec<Rational>>>()?;
        Geometry::new(pts)
    }

    /// Tag and matrix size.
    pub fn algebra_tag(&self) -> Result<(AlgebraTag, usize)> {
        let s = self.algebra.to_ascii_lowercase();
        let bad = || Error::Config(format!("unknown algebra `{}`", self.algebra));
        if s == "gl1" {
            return Ok((AlgebraTag::GL1, 1));
        }
        let (tag, rest) = if let Some(r) = s.strip_prefix("gl") {
            (AlgebraTag::GL, r)
        } else if let Some(r) = s.strip_prefix("sl") {
            (AlgebraTag::SL, r)
        } else {
            return Err(bad());
        };
        let l: usize = rest.parse().map_err(|_| bad())?;
        if l < 2 {
            return Err(bad());
        }
        Ok((tag, l))
    }

    pub fn projective(&self, geom: &Arc<Geometry>) -> Result<ProjectiveConnection> {
        ProjectiveConnection::new(&parse_config_fn(&self.projective_connection)?, geom)
    }

    pub fn affine(&self, geom: &Arc<Geometry>) -> Result<AffineConnection> {
        AffineConnection::new(&parse_config_fn(&self.affine_connection)?, geom)
    }

    pub fn representation(&self, geom: &Arc<Geometry>) -> Result<RepresentationData> {
        let (tag, l) = self.algebra_tag()?;
        let rep = RepresentationData::fundamental(tag, l, self.rank)?;
        match &self.connection_form {
            None => Ok(rep),
            Some(rows) => {
                let forms = rows
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|s| FormElement::from_rational_function(&parse_config_fn(s)?, 1, geom))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                rep.with_connection(forms)
            }
        }
    }

    pub fn module(&self) -> Result<Arc<FermionModule>> {
        let geom = self.geometry()?;
        let rep = self.representation(&geom)?;
        Ok(Arc::new(FermionModule::new(Arc::new(KnAlgebra::new(geom)), rep)?))
    }

    pub fn matrix(&self) -> Result<Option<Matrix>> {
        let Some(rows) = &self.args.matrix else {
            return Ok(None);
        };
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s).map_err(|e| Error::Config(e.to_string()))).collect())
            .collect::<Result<Vec<Vec<Rational>>>>()?;
        Matrix::from_rows(rows).map(Some).map_err(|e| Error::Config(e.to_string()))
    }

    /// The `args.vector` wedge vector, or the vacuum of `charge`.
    pub fn vector(&self) -> Result<WedgeVector> {
        let Some(terms) = &self.args.vector else {
            return Ok(WedgeVector::monomial(WedgeMonomial::vacuum(self.charge)));
        };
        let mut v = WedgeVector::zero();
        for t in terms {
            let c = parse_rational(&t.coefficient).map_err(|e| Error::Config(e.to_string()))?;
            let m = WedgeMonomial::new(self.charge, t.prefix.clone()).map_err(|e| Error::Config(e.to_string()))?;
            v.add_term(m, c);
        }
        Ok(v)
    }
}

pub fn parse_config_fn(s: &str) -> Result<crate::arith::RationalFunction> {
    parse_rational_function(s).map_err(|e| Error::Config(format!("`{s}`: {e}")))
}
