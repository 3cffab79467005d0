use serde::Serialize;

use super::ExtremalError;
use crate::code::{CodeShape, Regime};

fn pow(base: u64, exp: u32) -> Result<u64, ExtremalError> {
    base.checked_pow(exp).ok_or(ExtremalError::Overflow)
}

fn product(factors: &[(u64, u32)]) -> Result<u64, ExtremalError> {
    factors.iter().try_fold(1u64, |acc, &(b, e)| acc.checked_mul(pow(b, e)?).ok_or(ExtremalError::Overflow))
}

fn require_degree(shape: CodeShape) -> Result<(), ExtremalError> {
    if shape.d < 3 || shape.d >= shape.s {
        return Err(ExtremalError::DegreeOutOfRange { s: shape.s, d: shape.d });
    }
    Ok(())
}

/// Minimum distance of `C(d)` for `3 <= d < s`.
pub fn min_distance(shape: CodeShape) -> Result<u64, ExtremalError> {
    require_degree(shape)?;
    let CodeShape { q, s, d } = shape;
    if 2 * d <= s {
        product(&[(q - 2, d), (q - 1, s - d)])
    } else {
        product(&[(q - 2, s - d), (q - 1, d)])
    }
}

/// Next-to-minimal weight of `C(d)` outside the boundary band
/// `s in {2d - 1, 2d, 2d + 1}`.
pub fn next_to_min(shape: CodeShape) -> Result<u64, ExtremalError> {
    require_degree(shape)?;
    let CodeShape { q, s, d } = shape;
    match shape.regime() {
        Regime::SmallD => Ok(min_distance(shape)? + product(&[(q - 2, d), (q - 1, s - d - 2)])?),
        Regime::LargeD => Ok(min_distance(shape)? + product(&[(q - 2, s - d), (q - 1, d - 2)])?),
        Regime::Boundary => Err(ExtremalError::UnsupportedRegime { s, d, note: boundary_note(shape) }),
    }
}

fn boundary_note(shape: CodeShape) -> String {
    let (s, d) = (shape.s, shape.d);
    if s == 2 * d {
        "unresolved (s = 2d)".to_string()
    } else if s == 2 * d + 1 {
        "unresolved (s = 2d + 1); an experimental value exists for q >= 5".to_string()
    } else {
        "unresolved (s = 2d - 1); an experimental value exists for q >= 5".to_string()
    }
}

/// Marker attached to every experimental value.
pub const EXPERIMENTAL_MARKER: &str = "unproven";

/// A conjectured next-to-minimal weight; never asserted by the test suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Experimental {
    pub value: u64,
    pub marker: &'static str,
}

/// Announced next-to-minimal weights for `s = 2d +- 1` and `q >= 5`.
/// `None` outside those cases.
pub fn experimental_next_to_min(shape: CodeShape) -> Result<Option<Experimental>, ExtremalError> {
    require_degree(shape)?;
    let CodeShape { q, s, d } = shape;
    if q < 5 {
        return Ok(None);
    }
    let tail = pow(q - 2, 2)? + (q - 1);
    let head = if s == 2 * d + 1 {
        product(&[(q - 2, d - 1), (q - 1, d)])?
    } else if s + 1 == 2 * d {
        product(&[(q - 2, d - 2), (q - 1, d - 1)])?
    } else {
        return Ok(None);
    };
    let value = head.checked_mul(tail).ok_or(ExtremalError::Overflow)?;
    Ok(Some(Experimental { value, marker: EXPERIMENTAL_MARKER }))
}

/// The four leading-monomial shapes a nonzero remainder can take.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MonomialType {
    M1,
    M2,
    M3,
    M4,
}

impl MonomialType {
    pub fn name(self) -> &'static str {
        match self {
            MonomialType::M1 => "M1",
            MonomialType::M2 => "M2",
            MonomialType::M3 => "M3",
            MonomialType::M4 => "M4",
        }
    }
}

/// Number of box monomials that are multiples of a monomial of the given
/// type and not of `t1*...*td`. `v` is required for `M2` (`2..=d`) and
/// `M3` (`0..=d-2`) and must be absent otherwise.
pub fn n_formula(class: MonomialType, v: Option<u32>, shape: CodeShape) -> Result<u64, ExtremalError> {
    require_degree(shape)?;
    let CodeShape { q, s, d } = shape;
    let bad_v = || ExtremalError::VOutOfRange { class: class.name(), v };
    let outer = s - d;
    match (class, v) {
        (MonomialType::M1, None) => product(&[(q - 2, d - 1), (q - 1, outer)]),
        (MonomialType::M2, Some(v)) if (2..=d).contains(&v) && v <= outer => {
            let diff = pow(q - 1, v - 1)? - pow(q - 2, v - 1)?;
            product(&[(q - 2, d), (q - 1, outer - v)])?.checked_mul(diff).ok_or(ExtremalError::Overflow)
        }
        (MonomialType::M3, Some(v)) if v + 2 <= d && v < outer => {
            let diff = pow(q - 1, v + 1)? - pow(q - 2, v + 1)?;
            product(&[(q - 3, 1), (q - 2, d - 2), (q - 1, outer - 1 - v)])?
                .checked_mul(diff)
                .ok_or(ExtremalError::Overflow)
        }
        (MonomialType::M4, None) if outer >= 2 => product(&[(q - 2, d), (q - 1, outer - 2)]),
        _ => Err(bad_v()),
    }
}

/// One grid point of [`verify_inequalities`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InequalityRow {
    pub shape: CodeShape,
    pub n_m4: u64,
    pub min_competitor: u64,
    pub n_m3_0: u64,
    pub gap: u64,
    pub expected_gap: u64,
    pub failures: Vec<String>,
}

impl InequalityRow {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct InequalityReport {
    pub rows: Vec<InequalityRow>,
}

impl InequalityReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(InequalityRow::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &InequalityRow> {
        self.rows.iter().filter(|r| !r.passed())
    }
}

/// Checks, for each shape with `3 <= d` and `2d + 2 <= s`, that `N(M4)` is
/// the smallest count among `M1`, `M2(v)` and `M3(v >= 1)`, that
/// `N(M3, 0) < N(M4)`, and that their difference is
/// `(q-2)^(d-2) (q-1)^(s-d-2)`.
pub fn verify_inequalities(grid: &[CodeShape]) -> InequalityReport {
    let rows = grid.iter().map(|&shape| inequality_row(shape)).collect();
    InequalityReport { rows }
}

fn inequality_row(shape: CodeShape) -> InequalityRow {
    let mut row = InequalityRow {
        shape,
        n_m4: 0,
        min_competitor: 0,
        n_m3_0: 0,
        gap: 0,
        expected_gap: 0,
        failures: Vec::new(),
    };
    if shape.d < 3 || shape.regime() != Regime::SmallD {
        row.failures.push("shape outside 3 <= d, 2d + 2 <= s".to_string());
        return row;
    }
    if let Err(e) = fill_row(&mut row) {
        row.failures.push(e.to_string());
    }
    row
}

fn fill_row(row: &mut InequalityRow) -> Result<(), ExtremalError> {
    let shape = row.shape;
    let CodeShape { q, s, d } = shape;
    row.n_m4 = n_formula(MonomialType::M4, None, shape)?;
    row.n_m3_0 = n_formula(MonomialType::M3, Some(0), shape)?;
    let mut competitors = vec![n_formula(MonomialType::M1, None, shape)?];
    for v in 2..=d {
        competitors.push(n_formula(MonomialType::M2, Some(v), shape)?);
    }
    for v in 1..=d - 2 {
        competitors.push(n_formula(MonomialType::M3, Some(v), shape)?);
    }
    row.min_competitor = competitors.into_iter().min().expect("M1 is always present");
    row.expected_gap = product(&[(q - 2, d - 2), (q - 1, s - d - 2)])?;
    row.gap = row.n_m4.saturating_sub(row.n_m3_0);
    if row.n_m4 > row.min_competitor {
        row.failures.push(format!("N(M4) = {} exceeds competitor {}", row.n_m4, row.min_competitor));
    }
    if row.n_m3_0 >= row.n_m4 {
        row.failures.push(format!("N(M3, 0) = {} is not below N(M4) = {}", row.n_m3_0, row.n_m4));
    }
    if row.n_m4 < row.n_m3_0 || row.gap != row.expected_gap {
        row.failures.push(format!("N(M4) - N(M3, 0) = {} but expected {}", row.gap, row.expected_gap));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sh(q: u64, s: u32, d: u32) -> CodeShape {
        CodeShape::new(q, s, d)
    }

    #[test]
    fn min_distance_values() {
        assert_eq!(min_distance(sh(4, 8, 3)).unwrap(), 1944);
        assert_eq!(min_distance(sh(4, 4, 3)).unwrap(), 54);
        assert_eq!(min_distance(sh(5, 8, 3)).unwrap(), 27648);
        assert_eq!(min_distance(sh(4, 6, 3)).unwrap(), 216);
        assert!(matches!(min_distance(sh(4, 8, 2)), Err(ExtremalError::DegreeOutOfRange { .. })));
        assert!(matches!(min_distance(sh(4, 3, 3)), Err(ExtremalError::DegreeOutOfRange { .. })));
        assert!(matches!(min_distance(sh(16, 40, 3)), Err(ExtremalError::Overflow)));
    }

    #[test]
    fn next_to_min_values() {
        assert_eq!(next_to_min(sh(4, 8, 3)).unwrap(), 2160);
        assert_eq!(next_to_min(sh(4, 4, 3)).unwrap(), 60);
        assert_eq!(next_to_min(sh(5, 8, 3)).unwrap(), 29376);
        assert_eq!(next_to_min(sh(4, 9, 3)).unwrap(), 6480);
        assert_eq!(next_to_min(sh(4, 8, 5)).unwrap(), 2160);
        assert_eq!(next_to_min(sh(5, 4, 3)).unwrap(), 204);
        assert_eq!(next_to_min(sh(4, 5, 4)).unwrap(), 180);
        match next_to_min(sh(4, 6, 3)) {
            Err(ExtremalError::UnsupportedRegime { note, .. }) => assert!(note.contains("s = 2d")),
            other => panic!("expected regime error, got {other:?}"),
        }
        assert!(next_to_min(sh(4, 7, 3)).is_err());
        assert!(next_to_min(sh(4, 5, 3)).is_err());
    }

    #[test]
    fn experimental_only_near_the_diagonal() {
        assert_eq!(experimental_next_to_min(sh(4, 7, 3)).unwrap(), None);
        assert_eq!(experimental_next_to_min(sh(5, 8, 3)).unwrap(), None);
        assert_eq!(experimental_next_to_min(sh(5, 6, 3)).unwrap(), None);
        let e = experimental_next_to_min(sh(5, 7, 3)).unwrap().unwrap();
        assert_eq!(e.marker, EXPERIMENTAL_MARKER);
        assert!(e.value > min_distance(sh(5, 7, 3)).unwrap());
        assert!(experimental_next_to_min(sh(5, 5, 3)).unwrap().is_some());
    }

    #[test]
    fn counting_formula_values() {
        let s = sh(4, 8, 3);
        assert_eq!(n_formula(MonomialType::M1, None, s).unwrap(), 972);
        assert_eq!(n_formula(MonomialType::M3, Some(0), s).unwrap(), 162);
        assert_eq!(n_formula(MonomialType::M4, None, s).unwrap(), 216);
        assert_eq!(n_formula(MonomialType::M2, Some(3), s).unwrap(), 360);
        assert_eq!(n_formula(MonomialType::M2, Some(2), s).unwrap(), 216);
        for (class, v) in [
            (MonomialType::M2, Some(1)),
            (MonomialType::M2, None),
            (MonomialType::M3, Some(2)),
            (MonomialType::M1, Some(0)),
            (MonomialType::M4, Some(1)),
        ] {
            assert!(matches!(n_formula(class, v, s), Err(ExtremalError::VOutOfRange { .. })));
        }
    }

    #[test]
    fn inequality_grid() {
        assert!(verify_inequalities(&[]).rows.is_empty());
        let report = verify_inequalities(&[sh(4, 8, 3)]);
        let row = &report.rows[0];
        assert!(row.passed());
        assert_eq!((row.n_m4, row.n_m3_0, row.gap, row.expected_gap), (216, 162, 54, 54));

        let mut grid = Vec::new();
        for q in [4, 5, 7, 8, 9] {
            for d in 3..=5 {
                for s in [2 * d + 2, 2 * d + 3, 2 * d + 4] {
                    grid.push(sh(q, s, d));
                }
            }
        }
        let report = verify_inequalities(&grid);
        assert_eq!(report.rows.len(), 45);
        assert!(report.passed(), "{:?}", report.failures().collect::<Vec<_>>());

        assert!(!verify_inequalities(&[sh(4, 6, 3)]).passed());
    }
}
