//! The triangular system in ζ(s), …, ζ(3) and its solution `ζ(s) ≈ α ζ(2) + β`.
//!
//! Row ν (ν = 1..s−2) is the decomposition of `I_{s+1−ν}`:
//!
//! ```text
//! Σ_{j=3..s+1−ν} A_{ν,j} ζ(j) = A_{ν,2} ζ(2) + A_ν + θ_{s+1−ν},   θ_r = I_r.
//! ```
//!
//! Solving for ζ(s) by Cramer's rule gives `ζ(s) = Σ_ν Δ_{νs} (A_{ν,2} ζ(2) + A_ν + θ) / Δ`
//! with `Δ` the product of the diagonal and `Δ_{νs}` the cofactors of the first
//! column.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::numerics::{int, integer_digits, pow2_neg, Interval, Rat};
use crate::polynomials::{PolyFamily, PolySpec};
use crate::theorem_coeffs::{theorem_row, CoefficientRow};
use crate::zeta_series::{eval_special_series, eval_truncated};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangularSystem {
    s: u32,
    n: usize,
    cstar: Rat,
    legendre_binomial: bool,
    t: PolySpec,
    rows: Vec<CoefficientRow>,
    diag: Vec<Rat>,
    delta: Rat,
    complements: Vec<Rat>,
}

impl TriangularSystem {
    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `c*` of the third polynomial.
    pub fn cstar(&self) -> &Rat {
        &self.cstar
    }

    /// Rows for orders `s, s−1, …, 3`.
    pub fn rows(&self) -> &[CoefficientRow] {
        &self.rows
    }

    pub fn diag(&self) -> &[Rat] {
        &self.diag
    }

    pub fn delta(&self) -> &Rat {
        &self.delta
    }

    /// Cofactors `Δ_{νs}` of the first column.
    pub fn complements(&self) -> &[Rat] {
        &self.complements
    }

    /// Whether the first two polynomials are the shifted Legendre / binomial
    /// pair, so that the fast series and the `c* 2^(−2n)` bound apply.
    pub fn is_legendre_binomial(&self) -> bool {
        self.legendre_binomial
    }

    /// `M[ν][k]`: coefficient of ζ(s−k) in row ν.
    fn matrix(&self) -> Vec<Vec<Rat>> {
        let dim = self.rows.len();
        self.rows
            .iter()
            .map(|row| {
                (0..dim)
                    .map(|k| row.combo().coeff(self.s - k as u32))
                    .collect()
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxResult {
    pub s: u32,
    pub n: usize,
    pub alpha: Rat,
    pub beta: Rat,
    pub theta_bound: Rat,
    pub cstar: Rat,
}

impl ApproxResult {
    /// Enclosure of ζ(s): `α ζ(2) + β ± thetaBound`, with ζ(2) known well
    /// enough that `α ζ(2)` is within `10^-digits`.
    pub fn enclosure(&self, digits: u32) -> Result<Interval> {
        let z2 = crate::numerics::zeta_reference(2, digits + integer_digits(&self.alpha))?;
        Ok(z2
            .scale(&self.alpha)
            .shift(&self.beta)
            .widen(&self.theta_bound))
    }
}

/// Rows for orders `s..=3` from a common polynomial triple. `T` is padded with
/// zeros to the degree of `P` when it is an explicit polynomial of lower degree.
pub fn build_system(p: &PolySpec, q: &PolySpec, t: &PolySpec, s: u32) -> Result<TriangularSystem> {
    if s < 3 {
        return Err(Error::OrderTooSmall { order: s, min: 3 });
    }
    let n = p.degree();
    if q.degree() != n || t.degree() > n {
        return Err(Error::DegreeMismatch(vec![
            p.degree(),
            q.degree(),
            t.degree(),
        ]));
    }
    let t = t.padded_to(n)?;
    let rows = (3..=s)
        .rev()
        .map(|r| theorem_row(p, q, &t, r))
        .collect::<Result<Vec<_>>>()?;
    let diag: Vec<Rat> = rows.iter().map(CoefficientRow::leading).collect();
    if let Some(row) = rows.iter().find(|row| row.leading().is_zero()) {
        return Err(Error::SingularSystem { order: row.order() });
    }
    let mut sys = TriangularSystem {
        s,
        n,
        cstar: t.cstar().clone(),
        legendre_binomial: p.family() == PolyFamily::ShiftedLegendre
            && q.family() == PolyFamily::Binomial,
        t,
        delta: diag.iter().product(),
        diag,
        rows,
        complements: Vec::new(),
    };
    let m = sys.matrix();
    sys.complements = (0..m.len())
        .map(|nu| first_column_cofactor(&m, nu))
        .collect();
    Ok(sys)
}

/// Determinant by exact Gaussian elimination.
fn determinant(mut m: Vec<Vec<Rat>>) -> Rat {
    let dim = m.len();
    let mut det = int(1);
    for col in 0..dim {
        let Some(pivot) = (col..dim).find(|&r| !m[r][col].is_zero()) else {
            return Rat::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        let (upper, lower) = m.split_at_mut(col + 1);
        let pivot_row = &upper[col];
        for row in lower.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let f = &row[col] / &p;
            for (dst, src) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *dst -= &f * src;
            }
        }
    }
    det
}

/// `(−1)^ν det(M without row ν and column 0)` (0-based ν).
fn first_column_cofactor(m: &[Vec<Rat>], nu: usize) -> Rat {
    let minor: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .filter(|(r, _)| *r != nu)
        .map(|(_, row)| row[1..].to_vec())
        .collect();
    let det = determinant(minor);
    if nu.is_multiple_of(2) {
        det
    } else {
        -det
    }
}

/// `(α, β)` by back-substitution on `(A_{ν,2}, A_ν)` right-hand sides.
pub fn solve_back_substitution(sys: &TriangularSystem) -> (Rat, Rat) {
    let m = sys.matrix();
    let dim = m.len();
    let mut x: Vec<(Rat, Rat)> = vec![(Rat::zero(), Rat::zero()); dim];
    for nu in (0..dim).rev() {
        let row = &sys.rows[nu];
        let (mut a2, mut a0) = (row.a2(), row.a0());
        for k in nu + 1..dim {
            a2 -= &m[nu][k] * &x[k].0;
            a0 -= &m[nu][k] * &x[k].1;
        }
        x[nu] = (a2 / &m[nu][nu], a0 / &m[nu][nu]);
    }
    x.swap_remove(0)
}

/// `(α, β)` as ratios of determinants via the first-column cofactors.
pub fn solve_determinant_ratio(sys: &TriangularSystem) -> (Rat, Rat) {
    let mut alpha = Rat::zero();
    let mut beta = Rat::zero();
    for (row, cof) in sys.rows.iter().zip(&sys.complements) {
        alpha += row.a2() * cof;
        beta += row.a0() * cof;
    }
    (alpha / &sys.delta, beta / &sys.delta)
}

/// Solves for ζ(s). `theta_bounds[ν]` bounds `|I_{s−ν}|` (0-based ν).
pub fn solve_zeta(sys: &TriangularSystem, theta_bounds: &[Rat]) -> Result<ApproxResult> {
    if theta_bounds.len() != sys.rows.len() {
        return Err(Error::DimensionMismatch {
            expected: sys.rows.len(),
            got: theta_bounds.len(),
        });
    }
    if theta_bounds.iter().any(Signed::is_negative) {
        return Err(Error::InvalidArgument(
            "theta bounds must be nonnegative".into(),
        ));
    }
    let (alpha, beta) = solve_back_substitution(sys);
    let weighted: Rat = sys
        .complements
        .iter()
        .zip(theta_bounds)
        .map(|(c, th)| c.abs() * th)
        .sum();
    Ok(ApproxResult {
        s: sys.s,
        n: sys.n,
        alpha,
        beta,
        theta_bound: weighted / sys.delta.abs(),
        cstar: sys.cstar.clone(),
    })
}

/// `c* 2^(−2n)`, valid when `P` is shifted Legendre and `Q` binomial.
pub fn theta_bound(
    n: usize,
    cstar: &Rat,
    s: u32,
    families: (PolyFamily, PolyFamily),
) -> Result<Rat> {
    if families != (PolyFamily::ShiftedLegendre, PolyFamily::Binomial) {
        return Err(Error::FamilyMismatch(format!(
            "bound needs (shifted-legendre, binomial), got ({}, {})",
            families.0, families.1
        )));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("bound needs n >= 1".into()));
    }
    if s < 3 {
        return Err(Error::OrderTooSmall { order: s, min: 3 });
    }
    Ok(cstar * pow2_neg(2 * n as u32))
}

const SERIES_START: u64 = 16;
const SERIES_CAP: u64 = 4096;

/// Certified bound on `|I_r|` from a numeric enclosure, refined until the
/// enclosure is narrow relative to its magnitude; for the Legendre/binomial pair the
/// analytic bound is used when it is smaller.
pub fn row_theta(sys: &TriangularSystem, p: &PolySpec, q: &PolySpec, r: u32) -> Result<Rat> {
    let mut terms = SERIES_START;
    let mut best: Option<Rat> = None;
    loop {
        let enclosure = if sys.legendre_binomial && sys.n >= 1 {
            eval_special_series(sys.n, &sys.t, r, terms)?
        } else {
            eval_truncated(p, q, &sys.t, r, terms)?
        };
        let mag = enclosure.mag();
        best = Some(match best {
            Some(b) if b < mag => b,
            _ => mag.clone(),
        });
        if enclosure.width() * int(64) <= mag || terms >= SERIES_CAP {
            break;
        }
        terms *= 4;
    }
    let mut bound = best.unwrap_or_else(Rat::zero);
    if sys.legendre_binomial && sys.n >= 1 {
        let analytic = theta_bound(
            sys.n,
            &sys.cstar,
            r,
            (PolyFamily::ShiftedLegendre, PolyFamily::Binomial),
        )?;
        if analytic < bound {
            bound = analytic;
        }
    }
    Ok(bound)
}

/// Builds the system, bounds every `|I_r|` and solves.
pub fn approximate(p: &PolySpec, q: &PolySpec, t: &PolySpec, s: u32) -> Result<ApproxResult> {
    let sys = build_system(p, q, t, s)?;
    let thetas = sys
        .rows
        .iter()
        .map(|row| row_theta(&sys, p, q, row.order()))
        .collect::<Result<Vec<_>>>()?;
    solve_zeta(&sys, &thetas)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{rat, zeta_reference};
    use crate::polynomials::{binomial_poly, explicit_poly, shifted_legendre};
    use proptest::prelude::*;

    fn poly(v: &[i64]) -> PolySpec {
        explicit_poly(v.iter().map(|x| int(*x)).collect()).unwrap()
    }

    #[test]
    fn constant_system_is_identity() {
        let one = poly(&[1]);
        let sys = build_system(&one, &one, &one, 5).unwrap();
        assert_eq!(sys.diag(), &[int(1), int(1), int(1)]);
        assert_eq!(sys.delta(), &int(1));
        assert_eq!(sys.complements(), &[int(1), int(0), int(0)]);
    }

    #[test]
    fn legendre_binomial_has_unit_leading() {
        let n = 3;
        let sys = build_system(&shifted_legendre(n), &binomial_poly(n), &poly(&[1]), 4).unwrap();
        assert_eq!(sys.diag()[0], int(1));
        assert!(sys.is_legendre_binomial());
    }

    #[test]
    fn zero_leading_is_singular() {
        let err =
            build_system(&shifted_legendre(1), &binomial_poly(1), &poly(&[0, 1]), 4).unwrap_err();
        assert_eq!(err, Error::SingularSystem { order: 4 });
    }

    #[test]
    fn constant_zeta3_degenerate_case() {
        let one = poly(&[1]);
        let sys = build_system(&one, &one, &one, 3).unwrap();
        let z3 = zeta_reference(3, 10).unwrap();
        let res = solve_zeta(&sys, &[z3.hi().clone()]).unwrap();
        assert_eq!((res.alpha.clone(), res.beta.clone()), (int(0), int(0)));
        assert!(res.theta_bound >= *z3.lo());
        assert!(res.enclosure(10).unwrap().contains_interval(&z3));
    }

    #[test]
    fn theta_bound_examples() {
        let fam = (PolyFamily::ShiftedLegendre, PolyFamily::Binomial);
        assert_eq!(theta_bound(1, &int(1), 3, fam).unwrap(), rat(1, 4));
        assert_eq!(theta_bound(10, &int(1), 5, fam).unwrap(), rat(1, 1_048_576));
        assert_eq!(theta_bound(2, &rat(3, 2), 4, fam).unwrap(), rat(3, 32));
        assert!(matches!(
            theta_bound(2, &int(1), 3, (PolyFamily::Explicit, PolyFamily::Binomial)),
            Err(Error::FamilyMismatch(_))
        ));
    }

    #[test]
    fn zeta3_within_decay_bound() {
        for n in 1..=6 {
            let res = approximate(&shifted_legendre(n), &binomial_poly(n), &poly(&[1]), 3).unwrap();
            let lemma = pow2_neg(2 * n as u32);
            assert!(res.theta_bound <= lemma, "n={n}");
            let z3 = zeta_reference(3, 30).unwrap();
            assert!(res.enclosure(30).unwrap().contains_interval(&z3), "n={n}");
        }
    }

    #[test]
    fn higher_orders_contain_reference() {
        for (n, s) in [(2, 4), (3, 5), (4, 6)] {
            let res = approximate(&shifted_legendre(n), &binomial_poly(n), &poly(&[1]), s).unwrap();
            let z = zeta_reference(s, 30).unwrap();
            assert!(
                res.enclosure(30).unwrap().contains_interval(&z),
                "n={n} s={s}"
            );
        }
    }

    #[test]
    fn dimension_mismatch() {
        let one = poly(&[1]);
        let sys = build_system(&one, &one, &one, 4).unwrap();
        assert_eq!(
            solve_zeta(&sys, &[int(0)]).unwrap_err(),
            Error::DimensionMismatch {
                expected: 2,
                got: 1
            }
        );
    }

    fn nonzero_lead(n: usize) -> impl Strategy<Value = Vec<i64>> {
        (
            prop_oneof![-3i64..=-1, 1i64..=3],
            proptest::collection::vec(-3i64..=3, n),
        )
            .prop_map(|(h, mut rest)| {
                rest.insert(0, h);
                rest
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn solve_routes_agree(
            (a, b, c) in (0usize..=3).prop_flat_map(|n| (nonzero_lead(n), nonzero_lead(n), nonzero_lead(n))),
            s in 3u32..=6,
        ) {
            let sys = match build_system(&poly(&a), &poly(&b), &poly(&c), s) {
                Ok(sys) => sys,
                Err(Error::SingularSystem { .. }) => return Ok(()),
                Err(e) => panic!("{e}"),
            };
            prop_assert_eq!(solve_back_substitution(&sys), solve_determinant_ratio(&sys));
        }
    }
}
