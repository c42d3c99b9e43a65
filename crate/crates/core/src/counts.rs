//! Count algebra: per-edge records, unrestricted sums and global counts.
//!
//! Per edge only `|T|`, `|S_u|`, `|S_v|`, the 4-clique count `x7` and the
//! 4-cycle count `x10` are measured. Every other 2-, 3- and 4-vertex
//! graphlet count follows from sums of these with known multiplicities.
//!
//! With `D = n - |S_u| - |S_v| - |T| - 2` (vertices adjacent to neither
//! endpoint), each edge contributes:
//!
//! | sum   | per-edge term              | equals                         |
//! |-------|----------------------------|--------------------------------|
//! | `C3`  | `t`                        | `3·X3`                         |
//! | `C4`  | `s_u + s_v`                | `2·X4`                         |
//! | `C5`  | `D`                        | `X5`                           |
//! | `C7`  | `x7`                       | `6·X7`                         |
//! | `C8`  | `t(t-1)/2`                 | `X8 + 6·X7`                    |
//! | `C9`  | `t·(s_u + s_v)`            | `4·X8 + 2·X9`                  |
//! | `C10` | `x10`                      | `4·X10`                        |
//! | `C11` | `C(s_u,2) + C(s_v,2)`      | `3·X11 + X9`                   |
//! | `C12` | `s_u·s_v`                  | `X12 + 4·X10`                  |
//! | `C13` | `t·D`                      | `3·X13 + X9`                   |
//! | `C14` | `m - d_v - d_u + 1`        | `2·(3X7+2X8+X9+2X10+X12+X14)`  |
//! | `C15` | `(s_u + s_v)·D`            | `2·X12 + 2·X15`                |
//! | `C16` | `C(D,2)`                   | `X16 + 2·X14`                  |

use std::fmt;
use std::str::FromStr;

use crate::count::{add, binomial, div_exact, lift, mul, sub, Count};
use crate::error::CountError;

/// Measured quantities for one edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EdgeMotifRecord {
    pub edge_id: usize,
    pub t: u64,
    pub s_u: u64,
    pub s_v: u64,
    pub x7: u64,
    pub x10: u64,
    /// Neighbor visits, stamp writes and binary-search probes spent on this edge.
    pub work_units: u64,
}

impl EdgeMotifRecord {
    pub fn degree_u(&self) -> u64 {
        self.s_u + self.t + 1
    }

    pub fn degree_v(&self) -> u64 {
        self.s_v + self.t + 1
    }

    /// Vertices adjacent to neither endpoint.
    pub fn disconnected(&self, n: usize) -> Result<u64, CountError> {
        (n as u64)
            .checked_sub(self.s_u + self.s_v + self.t + 2)
            .ok_or(CountError::Negative("D_e"))
    }
}

/// Local 3-vertex counts `(x3, x4, x5)`: triangles, 2-stars and
/// single-edge triples containing the edge.
pub fn local_three_counts(rec: &EdgeMotifRecord, n: usize) -> Result<(u64, u64, u64), CountError> {
    if n < 2 {
        return Err(CountError::TooFewVertices);
    }
    Ok((rec.t, rec.s_u + rec.s_v, rec.disconnected(n)?))
}

/// Per-edge (micro) graphlet counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MicroCounts {
    pub edge_id: usize,
    pub x3: u64,
    pub x4: u64,
    pub x5: u64,
    pub x7: u64,
    pub x10: u64,
    pub t: u64,
    pub s_u: u64,
    pub s_v: u64,
    pub d_e: u64,
}

pub fn micro_counts(rec: &EdgeMotifRecord, n: usize) -> Result<MicroCounts, CountError> {
    let (x3, x4, x5) = local_three_counts(rec, n)?;
    Ok(MicroCounts {
        edge_id: rec.edge_id,
        x3,
        x4,
        x5,
        x7: rec.x7,
        x10: rec.x10,
        t: rec.t,
        s_u: rec.s_u,
        s_v: rec.s_v,
        d_e: x5,
    })
}

/// Unrestricted sums `C3..C16` (there is no `C6`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnrestrictedCounts<C> {
    pub c3: C,
    pub c4: C,
    pub c5: C,
    pub c7: C,
    pub c8: C,
    pub c9: C,
    pub c10: C,
    pub c11: C,
    pub c12: C,
    pub c13: C,
    pub c14: C,
    pub c15: C,
    pub c16: C,
}

impl<C: Count> Default for UnrestrictedCounts<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Count> UnrestrictedCounts<C> {
    pub fn zero() -> Self {
        let z = C::zero;
        Self {
            c3: z(),
            c4: z(),
            c5: z(),
            c7: z(),
            c8: z(),
            c9: z(),
            c10: z(),
            c11: z(),
            c12: z(),
            c13: z(),
            c14: z(),
            c15: z(),
            c16: z(),
        }
    }

    fn fields_mut(&mut self) -> [&mut C; 13] {
        [
            &mut self.c3,
            &mut self.c4,
            &mut self.c5,
            &mut self.c7,
            &mut self.c8,
            &mut self.c9,
            &mut self.c10,
            &mut self.c11,
            &mut self.c12,
            &mut self.c13,
            &mut self.c14,
            &mut self.c15,
            &mut self.c16,
        ]
    }

    fn fields(&self) -> [&C; 13] {
        [
            &self.c3, &self.c4, &self.c5, &self.c7, &self.c8, &self.c9, &self.c10, &self.c11, &self.c12, &self.c13,
            &self.c14, &self.c15, &self.c16,
        ]
    }

    /// Adds one edge's terms. `n` and `m` are the graph's vertex and edge counts.
    pub fn accumulate(&mut self, rec: &EdgeMotifRecord, n: usize, m: usize) -> Result<(), CountError> {
        let (t, su, sv) = (rec.t, rec.s_u, rec.s_v);
        let d = rec.disconnected(n)?;
        let stars = su + sv;
        let touching = rec.degree_u() + rec.degree_v() - 1;
        let disjoint = (m as u64).checked_sub(touching).ok_or(CountError::Negative("C14"))?;

        let l = lift::<C>;
        let terms: [C; 13] = [
            l(t)?,
            l(stars)?,
            l(d)?,
            l(rec.x7)?,
            binomial(t, 2)?,
            mul(&l(t)?, &l(stars)?)?,
            l(rec.x10)?,
            add(&binomial(su, 2)?, &binomial(sv, 2)?)?,
            mul(&l(su)?, &l(sv)?)?,
            mul(&l(t)?, &l(d)?)?,
            l(disjoint)?,
            mul(&l(stars)?, &l(d)?)?,
            binomial(d, 2)?,
        ];
        for (acc, term) in self.fields_mut().into_iter().zip(terms.iter()) {
            *acc = add(acc, term)?;
        }
        Ok(())
    }

    /// Adds a partial clique / cycle count produced by a split sub-task.
    pub fn add_partial(&mut self, x7: u64, x10: u64) -> Result<(), CountError> {
        self.c7 = add(&self.c7, &lift(x7)?)?;
        self.c10 = add(&self.c10, &lift(x10)?)?;
        Ok(())
    }

    pub fn merge(&mut self, other: &Self) -> Result<(), CountError> {
        for (acc, x) in self.fields_mut().into_iter().zip(other.fields()) {
            *acc = add(acc, x)?;
        }
        Ok(())
    }

    pub fn merged(mut self, other: &Self) -> Result<Self, CountError> {
        self.merge(other)?;
        Ok(self)
    }
}

/// Accumulates `records` from zero.
pub fn accumulate_all<'a, C: Count>(
    records: impl IntoIterator<Item = &'a EdgeMotifRecord>,
    n: usize,
    m: usize,
) -> Result<UnrestrictedCounts<C>, CountError> {
    let mut acc = UnrestrictedCounts::zero();
    for rec in records {
        acc.accumulate(rec, n, m)?;
    }
    Ok(acc)
}

/// The seventeen graphlets on 2, 3 and 4 vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Graphlet {
    Edge = 1,
    TwoNodeIndependent,
    Triangle,
    TwoStar,
    ThreeNodeOneEdge,
    ThreeNodeIndependent,
    FourClique,
    ChordalCycle,
    TailedTriangle,
    FourCycle,
    ThreeStar,
    FourPath,
    FourNodeOneTriangle,
    FourNodeTwoEdge,
    FourNodeTwoStar,
    FourNodeOneEdge,
    FourNodeIndependent,
}

impl Graphlet {
    pub const ALL: [Graphlet; 17] = [
        Graphlet::Edge,
        Graphlet::TwoNodeIndependent,
        Graphlet::Triangle,
        Graphlet::TwoStar,
        Graphlet::ThreeNodeOneEdge,
        Graphlet::ThreeNodeIndependent,
        Graphlet::FourClique,
        Graphlet::ChordalCycle,
        Graphlet::TailedTriangle,
        Graphlet::FourCycle,
        Graphlet::ThreeStar,
        Graphlet::FourPath,
        Graphlet::FourNodeOneTriangle,
        Graphlet::FourNodeTwoEdge,
        Graphlet::FourNodeTwoStar,
        Graphlet::FourNodeOneEdge,
        Graphlet::FourNodeIndependent,
    ];

    /// 1-based index.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Graphlet> {
        Self::ALL.get(i.checked_sub(1)?).copied()
    }

    pub fn vertices(self) -> usize {
        match self.index() {
            1..=2 => 2,
            3..=6 => 3,
            _ => 4,
        }
    }

    pub fn is_connected(self) -> bool {
        matches!(self.index(), 1 | 3 | 4 | 7..=12)
    }

    /// The graphlet induced on the same vertices in the complement graph.
    pub fn complement(self) -> Graphlet {
        use Graphlet::*;
        match self {
            Edge => TwoNodeIndependent,
            TwoNodeIndependent => Edge,
            Triangle => ThreeNodeIndependent,
            ThreeNodeIndependent => Triangle,
            TwoStar => ThreeNodeOneEdge,
            ThreeNodeOneEdge => TwoStar,
            FourClique => FourNodeIndependent,
            FourNodeIndependent => FourClique,
            ChordalCycle => FourNodeOneEdge,
            FourNodeOneEdge => ChordalCycle,
            TailedTriangle => FourNodeTwoStar,
            FourNodeTwoStar => TailedTriangle,
            FourCycle => FourNodeTwoEdge,
            FourNodeTwoEdge => FourCycle,
            ThreeStar => FourNodeOneTriangle,
            FourNodeOneTriangle => ThreeStar,
            FourPath => FourPath,
        }
    }

    pub fn name(self) -> &'static str {
        use Graphlet::*;
        match self {
            Edge => "edge",
            TwoNodeIndependent => "2-node-independent",
            Triangle => "triangle",
            TwoStar => "2-star",
            ThreeNodeOneEdge => "3-node-1-edge",
            ThreeNodeIndependent => "3-node-independent",
            FourClique => "4-clique",
            ChordalCycle => "chordal-cycle",
            TailedTriangle => "tailed-triangle",
            FourCycle => "4-cycle",
            ThreeStar => "3-star",
            FourPath => "4-path",
            FourNodeOneTriangle => "4-node-1-triangle",
            FourNodeTwoEdge => "4-node-2-edge",
            FourNodeTwoStar => "4-node-2-star",
            FourNodeOneEdge => "4-node-1-edge",
            FourNodeIndependent => "4-node-independent",
        }
    }
}

impl fmt::Display for Graphlet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X{}", self.index())
    }
}

/// Global counts `X1..X17`, indexed 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GraphletVector<C> {
    values: [C; 17],
}

impl<C: Count> GraphletVector<C> {
    pub fn zero() -> Self {
        Self { values: std::array::from_fn(|_| C::zero()) }
    }

    pub fn from_array(values: [C; 17]) -> Self {
        Self { values }
    }

    /// `X_i`, `i` in `1..=17`.
    pub fn get(&self, i: usize) -> &C {
        &self.values[i - 1]
    }

    pub fn set(&mut self, i: usize, value: C) {
        self.values[i - 1] = value;
    }

    pub fn graphlet(&self, g: Graphlet) -> &C {
        self.get(g.index())
    }

    pub fn as_slice(&self) -> &[C] {
        &self.values
    }

    pub fn iter(&self) -> impl Iterator<Item = (Graphlet, &C)> {
        Graphlet::ALL.iter().copied().zip(self.values.iter())
    }

    /// First `X_i` (1-based) where the two vectors differ.
    pub fn first_difference(&self, other: &Self) -> Option<usize> {
        self.values.iter().zip(other.values.iter()).position(|(a, b)| a != b).map(|i| i + 1)
    }

    /// Checks that each arity sums to the matching binomial coefficient.
    pub fn check_partitions(&self, n: usize) -> Result<bool, CountError> {
        let sum = |r: std::ops::RangeInclusive<usize>| -> Result<C, CountError> {
            r.map(|i| self.get(i).clone()).try_fold(C::zero(), |a, x| add(&a, &x))
        };
        let n = n as u64;
        Ok(sum(1..=2)? == binomial(n, 2)? && sum(3..=6)? == binomial(n, 3)? && sum(7..=17)? == binomial(n, 4)?)
    }

    /// Converts to another count type.
    pub fn convert<D: Count>(&self) -> Option<GraphletVector<D>> {
        let mut out = GraphletVector::<D>::zero();
        for (i, v) in self.values.iter().enumerate() {
            out.values[i] = v.to_string().parse().ok()?;
        }
        Some(out)
    }
}

impl<C: Count> FromStr for GraphletVector<C> {
    type Err = String;

    /// Parses 17 comma- or whitespace-separated decimal counts.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(|c: char| c == ',' || c.is_whitespace()).filter(|p| !p.is_empty()).collect();
        if parts.len() != 17 {
            return Err(format!("expected 17 counts, found {}", parts.len()));
        }
        let mut out = Self::zero();
        for (i, p) in parts.iter().enumerate() {
            out.values[i] = p.parse().map_err(|_| format!("invalid count {p:?}"))?;
        }
        Ok(out)
    }
}

impl<C: Count> fmt::Display for GraphletVector<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Inverts the unrestricted sums into global counts.
///
/// `c` must cover every edge exactly once. Any inexact division or negative
/// intermediate means it did not.
pub fn global_from_unrestricted<C: Count>(
    c: &UnrestrictedCounts<C>,
    n: usize,
    m: usize,
) -> Result<GraphletVector<C>, CountError> {
    let n = n as u64;
    let l = lift::<C>;
    let mut x = GraphletVector::<C>::zero();

    let x1 = l(m as u64)?;
    let x2 = sub(&binomial(n, 2)?, &x1, "X2")?;
    let x3 = div_exact(&c.c3, 3, "X3")?;
    let x4 = div_exact(&c.c4, 2, "X4")?;
    let x5 = c.c5.clone();
    let x6 = sub(&binomial(n, 3)?, &add(&add(&x3, &x4)?, &x5)?, "X6")?;

    let x7 = div_exact(&c.c7, 6, "X7")?;
    let x8 = sub(&c.c8, &c.c7, "X8")?;
    let x9 = div_exact(&sub(&c.c9, &mul(&l(4)?, &x8)?, "X9")?, 2, "X9")?;
    let x10 = div_exact(&c.c10, 4, "X10")?;
    let x11 = div_exact(&sub(&c.c11, &x9, "X11")?, 3, "X11")?;
    let x12 = sub(&c.c12, &c.c10, "X12")?;
    let x13 = div_exact(&sub(&c.c13, &x9, "X13")?, 3, "X13")?;

    let mut connected_pairs = mul(&l(6)?, &x7)?;
    for (k, xi) in [(4u64, &x8), (2, &x9), (4, &x10), (2, &x12)] {
        connected_pairs = add(&connected_pairs, &mul(&l(k)?, xi)?)?;
    }
    let x14 = div_exact(&sub(&c.c14, &connected_pairs, "X14")?, 2, "X14")?;
    let x15 = div_exact(&sub(&c.c15, &mul(&l(2)?, &x12)?, "X15")?, 2, "X15")?;
    let x16 = sub(&c.c16, &mul(&l(2)?, &x14)?, "X16")?;

    let four = [&x7, &x8, &x9, &x10, &x11, &x12, &x13, &x14, &x15, &x16]
        .into_iter()
        .try_fold(C::zero(), |a, xi| add(&a, xi))?;
    let x17 = sub(&binomial(n, 4)?, &four, "X17")?;

    for (i, v) in [x1, x2, x3, x4, x5, x6, x7, x8, x9, x10, x11, x12, x13, x14, x15, x16, x17]
        .into_iter()
        .enumerate()
    {
        x.set(i + 1, v);
    }
    Ok(x)
}
