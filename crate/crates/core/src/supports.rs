//! Catalog of the nine boundary-condition configurations for the beam ends.
//!
//! Each support case pins four boundary values (derivative orders 0..3 at the
//! two ends), factorizes the fourth-order operator into four first-order
//! differences, and carries the bookkeeping the rest of the library needs:
//! which constraints are essential (order <= 1), whether the spectrum has a
//! closed form, and how many rigid-body shapes the case admits.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{BeamError, Result};

/// One of the two ends of the beam interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EndPoint {
    /// x = 0
    Left,
    /// x = length
    Right,
}

impl EndPoint {
    pub fn position(self, length: f64) -> f64 {
        match self {
            EndPoint::Left => 0.0,
            EndPoint::Right => length,
        }
    }

    pub fn mirrored(self) -> Self {
        match self {
            EndPoint::Left => EndPoint::Right,
            EndPoint::Right => EndPoint::Left,
        }
    }
}

/// A single homogeneous boundary condition: the `order`-th derivative
/// vanishes at `end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryConstraint {
    pub end: EndPoint,
    pub order: u8,
}

impl BoundaryConstraint {
    const fn new(end: EndPoint, order: u8) -> Self {
        Self { end, order }
    }

    /// Essential constraints (orders 0 and 1) are the ones retained in the
    /// quadratic-form domain; orders 2 and 3 are natural.
    pub fn is_essential(self) -> bool {
        self.order <= 1
    }

    /// The same constraint on the beam flipped end-for-end.
    pub fn mirrored(self) -> Self {
        Self::new(self.end.mirrored(), self.order)
    }
}

/// Tag for one first-order difference operator. `Plus` means the operator's
/// domain enforces a vanishing boundary value at that end, `Minus` means the
/// end is unconstrained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorTag {
    PlusPlus,
    PlusMinus,
    MinusPlus,
    MinusMinus,
}

impl FactorTag {
    pub fn left_constrained(self) -> bool {
        matches!(self, FactorTag::PlusPlus | FactorTag::PlusMinus)
    }

    pub fn right_constrained(self) -> bool {
        matches!(self, FactorTag::PlusPlus | FactorTag::MinusPlus)
    }
}

/// Whether the eigenvalues have closed forms or must come from the
/// characteristic-determinant root scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumGroup {
    AnalyticI,
    NumericII,
}

/// The nine canonical support cases. Letters follow the usual statics
/// shorthand: (a) flexible/pinned, (b) fixed/clamped, (c) free end; the three
/// `Add*` cases are the extra analytically solvable combinations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SupportCase {
    Aa,
    Ab,
    Ac,
    Bb,
    Bc,
    Cc,
    Add1,
    Add2,
    Add3,
}

use EndPoint::{Left, Right};

impl SupportCase {
    pub const ALL: [SupportCase; 9] = [
        SupportCase::Aa,
        SupportCase::Ab,
        SupportCase::Ac,
        SupportCase::Bb,
        SupportCase::Bc,
        SupportCase::Cc,
        SupportCase::Add1,
        SupportCase::Add2,
        SupportCase::Add3,
    ];

    /// The four vanishing conditions of the case, in catalog order.
    pub fn constraints(self) -> [BoundaryConstraint; 4] {
        use BoundaryConstraint as C;
        match self {
            SupportCase::Aa => [
                C::new(Left, 0),
                C::new(Right, 0),
                C::new(Left, 2),
                C::new(Right, 2),
            ],
            SupportCase::Ab => [
                C::new(Left, 0),
                C::new(Right, 0),
                C::new(Right, 1),
                C::new(Left, 2),
            ],
            SupportCase::Ac => [
                C::new(Left, 0),
                C::new(Left, 2),
                C::new(Right, 2),
                C::new(Right, 3),
            ],
            SupportCase::Bb => [
                C::new(Left, 0),
                C::new(Right, 0),
                C::new(Left, 1),
                C::new(Right, 1),
            ],
            SupportCase::Bc => [
                C::new(Left, 0),
                C::new(Left, 1),
                C::new(Right, 2),
                C::new(Right, 3),
            ],
            SupportCase::Cc => [
                C::new(Left, 2),
                C::new(Right, 2),
                C::new(Left, 3),
                C::new(Right, 3),
            ],
            SupportCase::Add1 => [
                C::new(Left, 1),
                C::new(Right, 1),
                C::new(Left, 3),
                C::new(Right, 3),
            ],
            SupportCase::Add2 => [
                C::new(Left, 0),
                C::new(Right, 1),
                C::new(Left, 2),
                C::new(Right, 3),
            ],
            SupportCase::Add3 => [
                C::new(Right, 0),
                C::new(Left, 1),
                C::new(Right, 2),
                C::new(Left, 3),
            ],
        }
    }

    /// Constraints of order <= 1; these stay in the form domain.
    pub fn essential_constraints(self) -> Vec<BoundaryConstraint> {
        self.constraints()
            .into_iter()
            .filter(|c| c.is_essential())
            .collect()
    }

    /// Factorization of the fourth-order operator into first-order
    /// differences, listed leftmost-to-rightmost; the rightmost factor is
    /// applied first.
    pub fn factorization(self) -> [FactorTag; 4] {
        use FactorTag::{MinusMinus as MM, MinusPlus as MP, PlusMinus as PM, PlusPlus as PP};
        match self {
            SupportCase::Aa => [MM, PP, MM, PP],
            SupportCase::Ab => [MM, PM, MP, PP],
            SupportCase::Ac => [MP, PP, MM, PM],
            SupportCase::Bb => [MM, MM, PP, PP],
            SupportCase::Bc => [MP, MP, PM, PM],
            SupportCase::Cc => [PP, PP, MM, MM],
            SupportCase::Add1 => [PP, MM, PP, MM],
            SupportCase::Add2 => [MP, PM, MP, PM],
            SupportCase::Add3 => [PM, MP, PM, MP],
        }
    }

    pub fn group(self) -> SpectrumGroup {
        match self {
            SupportCase::Aa | SupportCase::Add1 | SupportCase::Add2 | SupportCase::Add3 => {
                SpectrumGroup::AnalyticI
            }
            _ => SpectrumGroup::NumericII,
        }
    }

    /// Dimension of the zero eigenspace (rigid-body shapes a + b*x).
    pub fn kernel_dimension(self) -> usize {
        match self {
            SupportCase::Ac | SupportCase::Add1 => 1,
            SupportCase::Cc => 2,
            _ => 0,
        }
    }

    /// Lower-case token used in configs and on the command line.
    pub fn token(self) -> &'static str {
        match self {
            SupportCase::Aa => "aa",
            SupportCase::Ab => "ab",
            SupportCase::Ac => "ac",
            SupportCase::Bb => "bb",
            SupportCase::Bc => "bc",
            SupportCase::Cc => "cc",
            SupportCase::Add1 => "add1",
            SupportCase::Add2 => "add2",
            SupportCase::Add3 => "add3",
        }
    }
}

impl fmt::Display for SupportCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// A support case plus the reflection flag produced when a mirrored name
/// (ba, ca, cb) is resolved to its canonical partner. Reflection substitutes
/// x -> length - x and negates odd-order derivatives downstream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResolvedCase {
    pub case: SupportCase,
    pub reflected: bool,
}

impl ResolvedCase {
    pub fn canonical(case: SupportCase) -> Self {
        Self {
            case,
            reflected: false,
        }
    }
}

/// Resolve one of the mirrored names (ba, ca, cb) to its canonical case.
pub fn mirror(name: &str) -> Result<ResolvedCase> {
    let case = match name.to_ascii_lowercase().as_str() {
        "ba" => SupportCase::Ab,
        "ca" => SupportCase::Ac,
        "cb" => SupportCase::Bc,
        _ => return Err(BeamError::NotMirrored(name.to_string())),
    };
    Ok(ResolvedCase {
        case,
        reflected: true,
    })
}

/// Parse any accepted case token (canonical or mirrored, case-insensitive).
pub fn parse_case(name: &str) -> Result<ResolvedCase> {
    let lower = name.to_ascii_lowercase();
    for case in SupportCase::ALL {
        if case.token() == lower {
            return Ok(ResolvedCase::canonical(case));
        }
    }
    mirror(&lower).map_err(|_| BeamError::UnknownSupport(name.to_string()))
}
