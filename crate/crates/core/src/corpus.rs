//! Built-in projective hypersurfaces with their singular points.

use serde::Deserialize;

use crate::jacglobal::{parse_singular_points, GlobalError, HypersurfaceRecord};
use crate::poly::{default_var_names, parse_polynomial, Polynomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
pub struct CorpusHypersurface {
    pub name: String,
    pub nvars: usize,
    pub equation: String,
    pub points: Vec<String>,
}

#[derive(Deserialize)]
struct CorpusFile {
    hypersurface: Vec<CorpusHypersurface>,
}

const BUILTIN: &str = include_str!("../data/hypersurfaces.toml");

pub fn hypersurfaces() -> Vec<CorpusHypersurface> {
    toml::from_str::<CorpusFile>(BUILTIN)
        .expect("built-in corpus is valid")
        .hypersurface
}

pub fn hypersurface(name: &str) -> Option<CorpusHypersurface> {
    hypersurfaces().into_iter().find(|h| h.name == name)
}

impl CorpusHypersurface {
    pub fn polynomial(&self) -> Polynomial {
        parse_polynomial(&self.equation, &default_var_names(self.nvars))
            .expect("built-in equation parses")
    }

    pub fn singular_points(&self) -> Vec<(usize, Vec<Rational>)> {
        parse_singular_points(&self.points.join("\n")).expect("built-in points parse")
    }

    pub fn record(&self) -> Result<HypersurfaceRecord, GlobalError> {
        HypersurfaceRecord::new(self.polynomial(), &self.singular_points())
    }
}
