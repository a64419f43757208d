//! Closed-form coefficient rows: `I_r = Σ_j A_{·,j} ζ(j) − A_{·,2} ζ(2) − A_·`
//! for `r = 3`, `r = 4` and `r ≥ 5`, written with the symbols
//!
//! ```text
//! S_{μνλ} = a_μ b_ν c_λ + b_μ c_ν a_λ + c_μ a_ν b_λ.
//! ```
//!
//! Rows are stored as [`ZetaCombination`]s with the minus signs folded in: the
//! ζ(2) slot holds `−A_{·,2}` and the constant slot holds `−A_·`.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{int, inv_pow, rat_to_string, HarmonicTable, Rat};
use crate::polynomials::PolySpec;
use crate::zeta_series::{decompose_integral, Term, ZetaCombination};

/// How the intermediate ζ(r−j) coefficients of a general row are read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TranscriptionVariant {
    /// Lagrange-type triple sums weighted by harmonic numbers `H_x`.
    RegroupedWithH,
    /// The same sums with plain reciprocals.
    RegroupedNoH,
}

impl TranscriptionVariant {
    /// The oracle-confirmed reading.
    pub const PINNED: TranscriptionVariant = TranscriptionVariant::RegroupedNoH;
    pub const ALL: [TranscriptionVariant; 2] = [Self::RegroupedWithH, Self::RegroupedNoH];
}

impl fmt::Display for TranscriptionVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::RegroupedWithH => "with-h",
            Self::RegroupedNoH => "no-h",
        })
    }
}

/// Whether a general row also carries the separately displayed ζ(3) and ζ(2)
/// blocks, or relies on the generic `j`-indexed formula alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LowOrderRoute {
    Generic,
    SpecialBlocks,
}

impl LowOrderRoute {
    pub const PINNED: LowOrderRoute = LowOrderRoute::SpecialBlocks;
    pub const ALL: [LowOrderRoute; 2] = [Self::Generic, Self::SpecialBlocks];
}

/// `S_{μνλ}` for coefficient lists `a`, `b`, `c`.
pub fn s_sym(a: &[Rat], b: &[Rat], c: &[Rat], mu: usize, nu: usize, lam: usize) -> Result<Rat> {
    let len = a.len().min(b.len()).min(c.len());
    for index in [mu, nu, lam] {
        if index >= len {
            return Err(Error::IndexOutOfRange { index, len });
        }
    }
    Ok(&a[mu] * &b[nu] * &c[lam] + &b[mu] * &c[nu] * &a[lam] + &c[mu] * &a[nu] * &b[lam])
}

/// One row of the linear system: the exact ζ-decomposition of `I_order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientRow {
    order: u32,
    combo: ZetaCombination,
}

impl CoefficientRow {
    pub fn new(order: u32, combo: ZetaCombination) -> Self {
        Self { order, combo }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn combo(&self) -> &ZetaCombination {
        &self.combo
    }

    pub fn into_combo(self) -> ZetaCombination {
        self.combo
    }

    /// Coefficient of ζ(order).
    pub fn leading(&self) -> Rat {
        self.combo.coeff(self.order)
    }

    /// `A_{·,2}` (the negated ζ(2) slot).
    pub fn a2(&self) -> Rat {
        -self.combo.coeff(2)
    }

    /// `A_·` (the negated constant).
    pub fn a0(&self) -> Rat {
        -self.combo.constant().clone()
    }
}

struct Ctx<'a> {
    a: &'a [Rat],
    b: &'a [Rat],
    c: &'a [Rat],
    n: usize,
    h: HarmonicTable,
}

fn sg(e: u32) -> Rat {
    if e.is_multiple_of(2) {
        int(1)
    } else {
        int(-1)
    }
}

fn frac(v: i64) -> Rat {
    int(1) / int(v)
}

impl<'a> Ctx<'a> {
    fn new(p: &'a PolySpec, q: &'a PolySpec, t: &'a PolySpec) -> Result<Self> {
        let degrees = vec![p.degree(), q.degree(), t.degree()];
        if degrees.iter().any(|d| *d != degrees[0]) {
            return Err(Error::DegreeMismatch(degrees));
        }
        let n = degrees[0];
        Ok(Self {
            a: p.coeffs(),
            b: q.coeffs(),
            c: t.coeffs(),
            n,
            h: HarmonicTable::new(n, 3),
        })
    }

    fn s(&self, mu: usize, nu: usize, lam: usize) -> Rat {
        &self.a[mu] * &self.b[nu] * &self.c[lam]
            + &self.b[mu] * &self.c[nu] * &self.a[lam]
            + &self.c[mu] * &self.a[nu] * &self.b[lam]
    }

    /// `a_r b_r c_r`
    fn d(&self, r: usize) -> Rat {
        &self.a[r] * &self.b[r] * &self.c[r]
    }

    fn h(&self, x: usize, m: u32) -> &Rat {
        self.h.get(x, m)
    }

    /// `Σ_{r=1..n} Σ_{l=1..r−1} f(r, l)`
    fn pairs(&self, mut f: impl FnMut(usize, usize) -> Rat) -> Rat {
        let mut acc = Rat::zero();
        for r in 2..=self.n {
            for l in 1..r {
                acc += f(r, l);
            }
        }
        acc
    }

    /// `Σ_{r>l>i≥0} (S_{irl} + S_{ilr}) Σ_{x∈{i,r,l}, x≠0} g(x) / ((x−y)(x−w))`
    fn triples(&self, g: impl Fn(usize) -> Rat) -> Rat {
        let mut acc = Rat::zero();
        for r in 2..=self.n {
            for l in 1..r {
                for i in 0..l {
                    let w = self.s(i, r, l) + self.s(i, l, r);
                    if w.is_zero() {
                        continue;
                    }
                    let mut inner = Rat::zero();
                    for (x, y, z) in [(i, r, l), (r, i, l), (l, i, r)] {
                        if x == 0 {
                            continue;
                        }
                        let den = (x as i64 - y as i64) * (x as i64 - z as i64);
                        inner += g(x) * frac(den);
                    }
                    acc += w * inner;
                }
            }
        }
        acc
    }
}

fn idx(v: usize) -> i64 {
    v as i64
}

/// Row for `I_3`.
pub fn row_zeta3(p: &PolySpec, q: &PolySpec, t: &PolySpec) -> Result<CoefficientRow> {
    let cx = Ctx::new(p, q, t)?;
    let n = cx.n;
    let a3: Rat = (0..=n).map(|r| cx.d(r)).sum();

    let mut a2 = Rat::zero();
    let mut a0: Rat = (1..=n).map(|r| cx.d(r) * cx.h(r, 3)).sum();
    for r in 1..=n {
        for l in 0..r {
            let (srrl, sllr) = (cx.s(r, r, l), cx.s(l, l, r));
            let gap = idx(r) - idx(l);
            a2 += (&srrl - &sllr) * frac(gap);
            a0 -= (&srrl * cx.h(r, 2) - &sllr * cx.h(l, 2)) * frac(gap)
                + (&srrl - &sllr) * (cx.h(r, 1) - cx.h(l, 1)) * frac(gap * gap);
        }
    }
    a0 += cx.triples(|x| cx.h(x, 1).clone());

    let mut combo = ZetaCombination::zero();
    combo.add_zeta(3, &a3);
    combo.add_zeta(2, &-a2);
    combo.add_constant(&-a0);
    Ok(CoefficientRow::new(3, combo))
}

/// Row for `I_4`.
pub fn row_zeta4(p: &PolySpec, q: &PolySpec, t: &PolySpec) -> Result<CoefficientRow> {
    let cx = Ctx::new(p, q, t)?;
    let n = cx.n;
    let a4 = cx.d(0);
    let mut a3 = Rat::zero();
    let mut a2 = Rat::zero();
    let mut a0 = Rat::zero();
    for r in 1..=n {
        let (s00, s0, d) = (cx.s(0, 0, r), cx.s(0, r, r), cx.d(r));
        let ri = idx(r);
        a3 += (&s00 - &d) * frac(ri);
        a2 += (&d + &s00 - &s0 * int(2)) * frac(ri * ri);
        a0 += (&s0 * int(2) - &d - &s00) * frac(ri * ri * ri) * cx.h(r, 1)
            + (&s0 - &d) * frac(ri * ri) * cx.h(r, 2)
            - &d * frac(ri) * cx.h(r, 3);
    }
    a2 += cx.pairs(|r, l| {
        let (ri, li) = (idx(r), idx(l));
        (cx.s(0, r, l) + cx.s(0, l, r)) * frac(ri - li) * (frac(ri) - frac(li))
            - frac(ri - li) * (cx.s(r, r, l) * frac(ri) - cx.s(l, l, r) * frac(li))
    });
    a0 += cx.pairs(|r, l| {
        let (ri, li) = (idx(r), idx(l));
        let (srrl, sllr) = (cx.s(r, r, l), cx.s(l, l, r));
        let gap = ri - li;
        (&srrl - &sllr) * frac(gap * gap) * (cx.h(r, 1) * frac(ri) - cx.h(l, 1) * frac(li))
            + frac(gap) * (&srrl * cx.h(r, 1) * frac(ri * ri) - &sllr * cx.h(l, 1) * frac(li * li))
            + frac(gap) * (&srrl * cx.h(r, 2) * frac(ri) - &sllr * cx.h(l, 2) * frac(li))
    });
    a0 -= cx.triples(|x| cx.h(x, 1) * frac(idx(x)));

    let mut combo = ZetaCombination::zero();
    combo.add_zeta(4, &a4);
    combo.add_zeta(3, &a3);
    combo.add_zeta(2, &-a2);
    combo.add_constant(&-a0);
    Ok(CoefficientRow::new(4, combo))
}

/// Row for `I_r`, `r ≥ 5`, under the pinned low-order route.
pub fn row_general(
    p: &PolySpec,
    q: &PolySpec,
    t: &PolySpec,
    r: u32,
    variant: TranscriptionVariant,
) -> Result<CoefficientRow> {
    row_general_with_route(p, q, t, r, variant, LowOrderRoute::PINNED)
}

pub fn row_general_with_route(
    p: &PolySpec,
    q: &PolySpec,
    t: &PolySpec,
    s: u32,
    variant: TranscriptionVariant,
    route: LowOrderRoute,
) -> Result<CoefficientRow> {
    if s < 5 {
        return Err(Error::OrderTooSmall { order: s, min: 5 });
    }
    let cx = Ctx::new(p, q, t)?;
    let n = cx.n;
    let mut combo = ZetaCombination::zero();
    combo.add_zeta(s, &cx.d(0));

    let mut top1 = Rat::zero();
    let mut top2 = Rat::zero();
    for r in 1..=n {
        let ri = idx(r);
        let s00 = cx.s(0, 0, r);
        top1 += &s00 * frac(ri);
        top2 += (cx.s(0, r, r) - &s00) * frac(ri * ri);
    }
    top2 -= cx.pairs(|r, l| {
        let (ri, li) = (idx(r), idx(l));
        (cx.s(0, l, r) + cx.s(0, r, l)) * frac(ri - li) * (frac(ri) - frac(li))
    });
    combo.add_zeta(s - 1, &top1);
    combo.add_zeta(s - 2, &top2);

    for j in 3..=s - 2 {
        let half = int(i64::from((j - 2) * (j - 1))) / int(2);
        let mut v: Rat = (1..=n)
            .map(|r| {
                (cx.s(0, 0, r) - cx.s(0, r, r) * int(i64::from(j - 1)) + &half * cx.d(r))
                    * inv_pow(r as u64, j)
            })
            .sum();
        v += cx.pairs(|r, l| {
            let (ri, li) = (idx(r), idx(l));
            let (srrl, sllr) = (cx.s(r, r, l), cx.s(l, l, r));
            let gap = ri - li;
            (&sllr - &srrl)
                * frac(gap * gap)
                * (inv_pow(r as u64, j - 2) - inv_pow(l as u64, j - 2))
                + int(i64::from(j - 2))
                    * frac(gap)
                    * (&sllr * inv_pow(l as u64, j - 1) - &srrl * inv_pow(r as u64, j - 1))
        });
        v += cx.triples(|x| {
            let base = inv_pow(x as u64, j - 2);
            match variant {
                TranscriptionVariant::RegroupedWithH => base * cx.h(x, 1),
                TranscriptionVariant::RegroupedNoH => base,
            }
        });
        combo.add_zeta(s - j, &(sg(j - 1) * v));
    }

    if route == LowOrderRoute::SpecialBlocks {
        let e = s - 3;
        let mut z3 = Rat::zero();
        let mut z2 = Rat::zero();
        for r in 1..=n {
            let d = cx.d(r);
            z3 += &d * sg(e) * inv_pow(r as u64, e);
            z2 += cx.s(0, r, r) * sg(s) * inv_pow(r as u64, s - 2)
                + &d * sg(e) * int(i64::from(e)) * inv_pow(r as u64, e + 1);
        }
        z2 += cx.pairs(|r, l| {
            sg(e)
                * frac(idx(r) - idx(l))
                * (cx.s(l, l, r) * inv_pow(l as u64, e) - cx.s(r, r, l) * inv_pow(r as u64, e))
        });
        combo.add_zeta(3, &z3);
        combo.add_zeta(2, &z2);
    }

    let e = s - 3;
    let binom = int(i64::from((s - 2) * (s - 3))) / int(2);
    let mut a1 = Rat::zero();
    for r in 1..=n {
        let r64 = r as u64;
        let (s00, s0, d) = (cx.s(0, 0, r), cx.s(0, r, r), cx.d(r));
        a1 += (&s00 - &s0 * int(i64::from(s - 2)) + &binom * &d) * inv_pow(r64, s - 1) * cx.h(r, 1)
            + (&d * int(i64::from(e)) - &s0) * inv_pow(r64, s - 2) * cx.h(r, 2)
            + &d * inv_pow(r64, e) * cx.h(r, 3);
    }
    a1 += cx.pairs(|r, l| {
        let (r64, l64) = (r as u64, l as u64);
        let (srrl, sllr) = (cx.s(r, r, l), cx.s(l, l, r));
        let gap = idx(r) - idx(l);
        frac(gap) * (cx.h(l, 2) * &sllr * inv_pow(l64, e) - cx.h(r, 2) * &srrl * inv_pow(r64, e))
            + int(i64::from(e))
                * frac(gap)
                * (cx.h(l, 1) * &sllr * inv_pow(l64, s - 2)
                    - cx.h(r, 1) * &srrl * inv_pow(r64, s - 2))
            + (&sllr - &srrl)
                * frac(gap * gap)
                * (cx.h(r, 1) * inv_pow(r64, e) - cx.h(l, 1) * inv_pow(l64, e))
    });
    a1 += cx.triples(|x| cx.h(x, 1) * inv_pow(x as u64, e));
    a1 *= sg(s - 1);
    combo.add_constant(&-a1);
    Ok(CoefficientRow::new(s, combo))
}

/// Row for any order `r ≥ 3` under the pinned conventions.
pub fn theorem_row(p: &PolySpec, q: &PolySpec, t: &PolySpec, r: u32) -> Result<CoefficientRow> {
    theorem_row_with(
        p,
        q,
        t,
        r,
        TranscriptionVariant::PINNED,
        LowOrderRoute::PINNED,
    )
}

pub fn theorem_row_with(
    p: &PolySpec,
    q: &PolySpec,
    t: &PolySpec,
    r: u32,
    variant: TranscriptionVariant,
    route: LowOrderRoute,
) -> Result<CoefficientRow> {
    match r {
        0..=2 => Err(Error::OrderTooSmall { order: r, min: 3 }),
        3 => row_zeta3(p, q, t),
        4 => row_zeta4(p, q, t),
        _ => row_general_with_route(p, q, t, r, variant, route),
    }
}

/// A row together with the conventions that produced it.
#[derive(Debug, Clone)]
pub struct LabeledRow {
    pub row: CoefficientRow,
    pub variant: Option<TranscriptionVariant>,
    pub route: Option<LowOrderRoute>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FirstDifference {
    pub term: String,
    pub row: String,
    pub oracle: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowCheck {
    pub order: u32,
    pub variant: Option<TranscriptionVariant>,
    pub route: Option<LowOrderRoute>,
    pub pinned: bool,
    pub equal: bool,
    pub first_difference: Option<FirstDifference>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub pinned_variant: TranscriptionVariant,
    pub pinned_route: LowOrderRoute,
    pub rows: Vec<RowCheck>,
}

impl ValidationReport {
    /// Every row built under the pinned conventions matched the oracle.
    pub fn pinned_all_equal(&self) -> bool {
        self.rows.iter().filter(|c| c.pinned).all(|c| c.equal)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &RowCheck> {
        self.rows.iter().filter(|c| !c.equal)
    }
}

/// Compares each row with the partial-fraction decomposition of the same
/// integral.
pub fn check_rows(
    rows: &[LabeledRow],
    p: &PolySpec,
    q: &PolySpec,
    t: &PolySpec,
) -> Result<ValidationReport> {
    let mut checks = Vec::with_capacity(rows.len());
    for labeled in rows {
        let oracle = decompose_integral(p, q, t, labeled.row.order())?;
        let diff = labeled.row.combo().first_difference(&oracle);
        let pinned = labeled
            .variant
            .is_none_or(|v| v == TranscriptionVariant::PINNED)
            && labeled.route.is_none_or(|r| r == LowOrderRoute::PINNED);
        checks.push(RowCheck {
            order: labeled.row.order(),
            variant: labeled.variant,
            route: labeled.route,
            pinned,
            equal: diff.is_none(),
            first_difference: diff.map(|d| FirstDifference {
                term: match d.term {
                    Term::Constant => "constant".to_string(),
                    Term::Zeta(p) => format!("zeta({p})"),
                },
                row: rat_to_string(&d.left),
                oracle: rat_to_string(&d.right),
            }),
        });
    }
    Ok(ValidationReport {
        pinned_variant: TranscriptionVariant::PINNED,
        pinned_route: LowOrderRoute::PINNED,
        rows: checks,
    })
}

/// All rows `3..=s_max`, with every variant and route for `r ≥ 5`.
pub fn build_rows(p: &PolySpec, q: &PolySpec, t: &PolySpec, s_max: u32) -> Result<Vec<LabeledRow>> {
    if s_max < 3 {
        return Err(Error::OrderTooSmall {
            order: s_max,
            min: 3,
        });
    }
    let mut rows = vec![LabeledRow {
        row: row_zeta3(p, q, t)?,
        variant: None,
        route: None,
    }];
    if s_max >= 4 {
        rows.push(LabeledRow {
            row: row_zeta4(p, q, t)?,
            variant: None,
            route: None,
        });
    }
    for r in 5..=s_max {
        for variant in TranscriptionVariant::ALL {
            for route in LowOrderRoute::ALL {
                rows.push(LabeledRow {
                    row: row_general_with_route(p, q, t, r, variant, route)?,
                    variant: Some(variant),
                    route: Some(route),
                });
            }
        }
    }
    Ok(rows)
}

pub fn validate_rows(
    p: &PolySpec,
    q: &PolySpec,
    t: &PolySpec,
    s_max: u32,
) -> Result<ValidationReport> {
    check_rows(&build_rows(p, q, t, s_max)?, p, q, t)
}
