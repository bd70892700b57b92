use std::fmt;
use std::str::FromStr;

use super::catalog::{make_dual_verma, make_projective, make_simple, make_steinberg, make_verma};
use super::GradedUModule;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModuleKind {
    L,
    Delta,
    Nabla,
    P,
    St,
}

impl ModuleKind {
    fn glyph(self) -> &'static str {
        match self {
            ModuleKind::L => "L",
            ModuleKind::Delta => "Δ",
            ModuleKind::Nabla => "∇",
            ModuleKind::P => "P",
            ModuleKind::St => "St",
        }
    }
}

/// `q^qshift t^tshift Kind(lambda)`. Canonical form has `lambda` in
/// `[0, p)`, the Euclidean quotient folded into `qshift`
/// (X(μ_0 + pμ_1) = q^{-pμ_1} X(μ_0)). Steinberg labels carry `lambda = -1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuleLabel {
    pub kind: ModuleKind,
    pub lambda: i64,
    pub qshift: i64,
    pub tshift: i64,
}

impl ModuleLabel {
    pub fn new(kind: ModuleKind, lambda: i64, qshift: i64, tshift: i64) -> Self {
        ModuleLabel { kind, lambda, qshift, tshift }
    }

    pub fn canonical(self, p: u64) -> Self {
        if self.kind == ModuleKind::St {
            return ModuleLabel { lambda: -1, ..self };
        }
        let p = p as i64;
        let (mu0, mu1) = (self.lambda.rem_euclid(p), self.lambda.div_euclid(p));
        let qshift = self.qshift - p * mu1;
        // P(p-1) is the shifted Steinberg module by convention
        if self.kind == ModuleKind::P && mu0 == p - 1 {
            return ModuleLabel { kind: ModuleKind::St, lambda: -1, qshift, tshift: self.tshift };
        }
        ModuleLabel { lambda: mu0, qshift, ..self }
    }

    pub fn build(&self, p: u64) -> GradedUModule {
        let base = match self.kind {
            ModuleKind::L => make_simple(p, self.lambda),
            ModuleKind::Delta => make_verma(p, self.lambda),
            ModuleKind::Nabla => make_dual_verma(p, self.lambda),
            ModuleKind::P => make_projective(p, self.lambda),
            ModuleKind::St => make_steinberg(p),
        };
        base.shift(self.qshift, self.tshift)
    }

    pub fn parse(s: &str) -> Result<Self> {
        s.parse()
    }
}

impl fmt::Display for ModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.qshift != 0 {
            write!(f, "q^{} ", self.qshift)?;
        }
        if self.tshift != 0 {
            write!(f, "t^{} ", self.tshift)?;
        }
        match self.kind {
            ModuleKind::St => write!(f, "St"),
            k => write!(f, "{}({})", k.glyph(), self.lambda),
        }
    }
}

impl FromStr for ModuleLabel {
    type Err = Error;

    /// Accepts e.g. `q^-3 t^2 P(1)`, `Delta(4)`, `∇(0)`, `t^-1 St`.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse(format!("bad module label {s:?}"));
        let (mut qshift, mut tshift) = (0, 0);
        let mut body = None;
        for tok in s.split_whitespace() {
            if let Some(v) = tok.strip_prefix("q^") {
                qshift += v.parse::<i64>().map_err(|_| err())?;
            } else if let Some(v) = tok.strip_prefix("t^") {
                tshift += v.parse::<i64>().map_err(|_| err())?;
            } else if body.replace(tok).is_some() {
                return Err(err());
            }
        }
        let body = body.ok_or_else(err)?;
        if body == "St" {
            return Ok(ModuleLabel { kind: ModuleKind::St, lambda: -1, qshift, tshift });
        }
        let (name, rest) = body.split_once('(').ok_or_else(err)?;
        let lambda: i64 = rest.strip_suffix(')').ok_or_else(err)?.parse().map_err(|_| err())?;
        let kind = match name {
            "L" => ModuleKind::L,
            "Δ" | "Delta" => ModuleKind::Delta,
            "∇" | "Nabla" => ModuleKind::Nabla,
            "P" => ModuleKind::P,
            "St" => ModuleKind::St,
            _ => return Err(err()),
        };
        Ok(ModuleLabel { kind, lambda, qshift, tshift })
    }
}
