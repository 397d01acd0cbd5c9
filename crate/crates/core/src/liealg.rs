//! The affine-Virasoro algebra of type A1.
//!
//! Basis `{e_i, f_i, h_i, d_i, C | i in Z}` with the brackets
//!
//! ```text
//! [e_i, f_j] = h_{i+j} + i δ C
//! [h_i, e_j] = 2 e_{i+j}            [h_i, f_j] = -2 f_{i+j}
//! [d_i, d_j] = (j-i) d_{i+j} + δ (i^3-i)/12 C
//! [d_i, h_j] = j h_{i+j}            [h_i, h_j] = HH_SIGN * 2i δ C
//! [d_i, e_j] = j e_{i+j}            [d_i, f_j] = j f_{i+j}
//! [e_i, e_j] = [f_i, f_j] = [C, -] = 0
//! ```
//!
//! where `δ = δ_{i+j,0}`.

use alloc::string::ToString;
use core::fmt;
use core::str::FromStr;

use crate::exact::{LinComb, Rational, Scalar};
use crate::text::{write_sum, ParseError};

/// Sign of the central term of `[h_i, h_j]`.
///
/// With `[e_i, f_j] = h_{i+j} + i δ C` the Jacobi identity on `(e_i, f_j, h_k)`
/// forces `[h_i, h_j] = +2i δ C`; the opposite sign leaves a residue `-4k C`.
pub const HH_SIGN: i64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    E,
    F,
    H,
    D,
    C,
}

impl Kind {
    pub const ALL: [Kind; 5] = [Kind::E, Kind::F, Kind::H, Kind::D, Kind::C];

    pub fn symbol(self) -> char {
        match self {
            Kind::E => 'e',
            Kind::F => 'f',
            Kind::H => 'h',
            Kind::D => 'd',
            Kind::C => 'C',
        }
    }
}

/// A basis element of the algebra. The mode of `C` is always 0.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    kind: Kind,
    mode: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Part {
    Negative,
    Cartan,
    Positive,
}

impl Generator {
    pub fn new(kind: Kind, mode: i64) -> Self {
        let mode = if kind == Kind::C { 0 } else { mode };
        Generator { kind, mode }
    }

    pub fn e(i: i64) -> Self {
        Self::new(Kind::E, i)
    }

    pub fn f(i: i64) -> Self {
        Self::new(Kind::F, i)
    }

    pub fn h(i: i64) -> Self {
        Self::new(Kind::H, i)
    }

    pub fn d(i: i64) -> Self {
        Self::new(Kind::D, i)
    }

    pub fn central() -> Self {
        Self::new(Kind::C, 0)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn mode(&self) -> i64 {
        self.mode
    }

    /// Every generator with `|mode| <= bound`, `C` once.
    pub fn all_up_to(bound: i64) -> alloc::vec::Vec<Generator> {
        let mut out = alloc::vec::Vec::new();
        for kind in [Kind::E, Kind::F, Kind::H, Kind::D] {
            for i in -bound..=bound {
                out.push(Generator::new(kind, i));
            }
        }
        out.push(Generator::central());
        out
    }

    /// Triangular decomposition: `f_0` is negative, `e_0` positive, and
    /// `d_0, h_0, C` span the Cartan subalgebra.
    pub fn triangular_part(&self) -> Part {
        match (self.kind, self.mode) {
            (Kind::C, _) => Part::Cartan,
            (_, m) if m < 0 => Part::Negative,
            (_, m) if m > 0 => Part::Positive,
            (Kind::F, _) => Part::Negative,
            (Kind::E, _) => Part::Positive,
            _ => Part::Cartan,
        }
    }

    /// Chevalley-type anti-involution: `e_i <-> f_{-i}`, `h_i -> h_{-i}`,
    /// `d_i -> d_{-i}`, `C -> C`.
    pub fn anti_involution(&self) -> Generator {
        let m = -self.mode;
        match self.kind {
            Kind::E => Generator::f(m),
            Kind::F => Generator::e(m),
            Kind::H => Generator::h(m),
            Kind::D => Generator::d(m),
            Kind::C => Generator::central(),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::C => f.write_str("C"),
            k => write!(f, "{}[{}]", k.symbol(), self.mode),
        }
    }
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Generator {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "C" {
            return Ok(Generator::central());
        }
        let kind = match s.chars().next() {
            Some('e') => Kind::E,
            Some('f') => Kind::F,
            Some('h') => Kind::H,
            Some('d') => Kind::D,
            _ => return Err(ParseError::new(0, "expected one of e, f, h, d, C")),
        };
        let rest = s[1..].trim();
        let inner = rest
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| ParseError::new(1, "expected [mode]"))?;
        let mode = inner.trim().parse::<i64>().map_err(|_| ParseError::new(2, "invalid mode"))?;
        Ok(Generator::new(kind, mode))
    }
}

/// Finite linear combination of generators.
pub type AlgebraElement = LinComb<Generator>;

impl fmt::Display for LinComb<Generator> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, self.iter().map(|(g, c)| (g.to_string(), c)))
    }
}

fn delta(i: i64, j: i64) -> bool {
    i + j == 0
}

/// Bracket of two generators.
pub fn bracket_gen(x: Generator, y: Generator) -> AlgebraElement {
    use Kind::*;
    let (i, j) = (x.mode, y.mode);
    let central = |c: Rational| LinComb::term(Generator::central(), Scalar::from(c));
    let int = Scalar::int;
    match (x.kind, y.kind) {
        (C, _) | (_, C) | (E, E) | (F, F) => LinComb::zero(),
        (E, F) => {
            let mut out = LinComb::basis(Generator::h(i + j));
            if delta(i, j) {
                out.add_term(Generator::central(), int(i));
            }
            out
        }
        (H, E) => LinComb::term(Generator::e(i + j), int(2)),
        (H, F) => LinComb::term(Generator::f(i + j), int(-2)),
        (H, H) => {
            if delta(i, j) {
                central(Rational::from_int(2 * HH_SIGN * i))
            } else {
                LinComb::zero()
            }
        }
        (D, D) => {
            let mut out = LinComb::term(Generator::d(i + j), int(j - i));
            if delta(i, j) {
                out.add_term(Generator::central(), Scalar::from(Rational::new(i * i * i - i, 12)));
            }
            out
        }
        (D, H) => LinComb::term(Generator::h(i + j), int(j)),
        (D, E) => LinComb::term(Generator::e(i + j), int(j)),
        (D, F) => LinComb::term(Generator::f(i + j), int(j)),
        (F, E) | (E, H) | (F, H) | (H, D) | (E, D) | (F, D) => -&bracket_gen(y, x),
    }
}

/// Bilinear extension of [`bracket_gen`].
pub fn bracket(x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
    let mut out = LinComb::zero();
    for (gx, cx) in x {
        for (gy, cy) in y {
            out.add_scaled(&bracket_gen(*gx, *gy), &(cx * cy));
        }
    }
    out
}

/// Linear extension of [`Generator::anti_involution`].
pub fn anti_involution(x: &AlgebraElement) -> AlgebraElement {
    x.map_keys(|g| g.anti_involution())
}

pub fn gen(g: Generator) -> AlgebraElement {
    LinComb::basis(g)
}
