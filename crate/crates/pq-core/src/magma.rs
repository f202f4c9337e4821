//! Finite binary-operation tables and the quandle-axiom checker.
//!
//! A [`FiniteMagma`] is a closed `n x n` operation table. The checker reports
//! idempotence, self-distributivity from both sides, commutativity, and
//! whether every right translation is a bijection, each with the first
//! violation in row-major order, and classifies the structure accordingly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::Limits;

/// A finite magma: carrier `0..size` with a row-major operation table.
#[derive(Clone, Debug)]
pub struct FiniteMagma {
    size: usize,
    op: Vec<u32>,
    labels: Vec<String>,
    provenance: String,
}

/// JSON document for a magma: row-major, 0-based indices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MagmaDoc {
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub op: Vec<Vec<usize>>,
}

/// Outcome of a single exhaustive law check, with the lexicographically
/// first counterexample when the law fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Law<T> {
    pub holds: bool,
    pub counterexample: Option<T>,
}

impl<T> Law<T> {
    fn passed() -> Self {
        Law {
            holds: true,
            counterexample: None,
        }
    }

    fn failed(witness: T) -> Self {
        Law {
            holds: false,
            counterexample: Some(witness),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Quandle,
    Rack,
    Pseudoquandle,
    MagmaOnly,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            Classification::Quandle => "quandle",
            Classification::Rack => "rack",
            Classification::Pseudoquandle => "pseudoquandle",
            Classification::MagmaOnly => "magma-only",
        };
        f.write_str(name)
    }
}

/// Exhaustive axiom report for a finite magma.
#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub idempotent: Law<usize>,
    pub right_self_distributive: Law<(usize, usize, usize)>,
    pub left_self_distributive: Law<(usize, usize, usize)>,
    pub commutative: Law<(usize, usize)>,
    /// Witness pair `(p, q)` such that `r * q = p` has no solution or more
    /// than one; first in `(p, q)` order.
    pub right_translations_bijective: Law<(usize, usize)>,
    pub classification: Classification,
}

impl FiniteMagma {
    /// Builds a magma from explicit rows after checking closure.
    pub fn from_table(
        op: Vec<Vec<usize>>,
        labels: Vec<String>,
        provenance: String,
    ) -> Result<Self> {
        let n = op.len();
        if n == 0 {
            return Err(Error::BadParameter("magma size must be positive".into()));
        }
        if labels.len() != n {
            return Err(Error::BadParameter(format!("expected {n} labels")));
        }
        let mut flat = vec![0u32; n * n];
        for (r, row) in op.iter().enumerate() {
            if row.len() != n {
                return Err(Error::BadParameter(format!(
                    "row {r} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::BadParameter(format!(
                        "op entry at ({r},{c}) is {v}, outside 0..{n}"
                    )));
                }
                flat[r * n + c] = v as u32;
            }
        }
        Ok(FiniteMagma {
            size: n,
            op: flat,
            labels,
            provenance,
        })
    }

    /// Builds a magma by evaluating `f` pointwise; `f` must stay in range.
    pub fn from_fn(
        size: usize,
        labels: Vec<String>,
        provenance: String,
        f: impl Fn(usize, usize) -> usize,
    ) -> Self {
        assert!(size > 0, "magma size must be positive");
        assert_eq!(labels.len(), size);
        let mut op = vec![0u32; size * size];
        for i in 0..size {
            for j in 0..size {
                let v = f(i, j);
                assert!(v < size, "op entry out of range");
                op[i * size + j] = v as u32;
            }
        }
        FiniteMagma {
            size,
            op,
            labels,
            provenance,
        }
    }

    /// The one-element magma.
    pub fn point() -> Self {
        FiniteMagma {
            size: 1,
            op: vec![0],
            labels: vec!["1".into()],
            provenance: "point".into(),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn op(&self, i: usize, j: usize) -> usize {
        self.op[i * self.size + j] as usize
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.size)
            .map(|i| (0..self.size).map(|j| self.op(i, j)).collect())
            .collect()
    }

    pub fn to_doc(&self) -> MagmaDoc {
        MagmaDoc {
            size: self.size,
            labels: Some(self.labels.clone()),
            op: self.rows(),
        }
    }

    pub fn from_doc(doc: &MagmaDoc, provenance: String, limits: &Limits) -> Result<Self> {
        if doc.size > limits.max_magma {
            return Err(Error::SizeLimit {
                what: "magma size",
                actual: doc.size,
                cap: limits.max_magma,
            });
        }
        if doc.op.len() != doc.size {
            return Err(Error::BadParameter(format!(
                "op table has {} rows, expected {}",
                doc.op.len(),
                doc.size
            )));
        }
        let labels = match &doc.labels {
            Some(given) if given.len() == doc.size => given.clone(),
            Some(_) => return Err(Error::BadParameter(format!("expected {} labels", doc.size))),
            None => (1..=doc.size).map(|i| i.to_string()).collect(),
        };
        Self::from_table(doc.op.clone(), labels, provenance)
    }

    /// Trivial quandle: `a * b = a`.
    pub fn trivial_quandle(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadParameter("trivial quandle needs n >= 1".into()));
        }
        let labels = (1..=n).map(|i| format!("t{i}")).collect();
        Ok(Self::from_fn(n, labels, format!("trivial:{n}"), |a, _| a))
    }

    /// Dihedral quandle on Z/n: `i * j = 2j - i (mod n)`.
    pub fn dihedral_quandle(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadParameter("dihedral quandle needs n >= 1".into()));
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        Ok(Self::from_fn(n, labels, format!("dihedral:{n}"), |i, j| {
            (2 * j + n - (i % n)) % n
        }))
    }

    /// Alexander quandle on Z/n with unit `t`: `a * b = t·a + (1-t)·b`.
    pub fn alexander_quandle(n: usize, t: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadParameter("alexander quandle needs n >= 1".into()));
        }
        let t = t % n;
        if gcd(t, n) != 1 {
            return Err(Error::BadParameter(format!(
                "t = {t} is not a unit modulo {n}"
            )));
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        let one_minus_t = (n + 1 - t) % n;
        Ok(Self::from_fn(
            n,
            labels,
            format!("alexander:{n}:{t}"),
            |a, b| (t * a + one_minus_t * b) % n,
        ))
    }

    /// Symplectic quandle on (Z/n)^2 with the standard antisymmetric form
    /// `<x,y> = x1·y2 - x2·y1`: `x * y = x + <x,y>·y`. Needs odd modulus.
    pub fn symplectic_quandle(n: usize) -> Result<Self> {
        if n == 0 || n % 2 == 0 {
            return Err(Error::BadParameter(
                "symplectic quandle needs an odd modulus".into(),
            ));
        }
        let size = n * n;
        let labels = (0..size)
            .map(|k| format!("({},{})", k / n, k % n))
            .collect();
        Ok(Self::from_fn(
            size,
            labels,
            format!("symplectic:{n}"),
            |x, y| {
                let (x1, x2) = (x / n, x % n);
                let (y1, y2) = (y / n, y % n);
                let form = (x1 * y2 + n - (x2 * y1) % n) % n;
                let z1 = (x1 + form * y1) % n;
                let z2 = (x2 + form * y2) % n;
                z1 * n + z2
            },
        ))
    }

    /// Conjugation quandle on a group: `g * h = h^-e · g · h^e`.
    pub fn conjugation_quandle(group: &GroupTable, exponent: i64) -> Self {
        let n = group.order();
        let pow = |mut base: usize, e: i64| -> usize {
            if e < 0 {
                base = group.inv(base);
            }
            // Element orders divide the group order, so the exponent only
            // matters modulo the order of `base`.
            let mut order = 1usize;
            let mut acc = base;
            while acc != group.identity() {
                acc = group.mul(acc, base);
                order += 1;
            }
            let mut k = (e.unsigned_abs() as usize) % order;
            acc = group.identity();
            while k > 0 {
                acc = group.mul(acc, base);
                k -= 1;
            }
            acc
        };
        let labels = group.labels().to_vec();
        Self::from_fn(
            n,
            labels,
            format!("conj:{}:{exponent}", group.spec_string()),
            |g, h| {
                let he = pow(h, exponent);
                group.mul(group.mul(group.inv(he), g), he)
            },
        )
    }

    /// Componentwise operation on the Cartesian product of two carriers.
    pub fn direct_sum(&self, other: &Self, limits: &Limits) -> Result<Self> {
        let size = self
            .size
            .checked_mul(other.size)
            .filter(|&s| s <= limits.max_magma)
            .ok_or(Error::SizeLimit {
                what: "magma size",
                actual: self.size.saturating_mul(other.size),
                cap: limits.max_magma,
            })?;
        let labels = (0..size)
            .map(|k| {
                format!(
                    "({},{})",
                    self.labels[k / other.size],
                    other.labels[k % other.size]
                )
            })
            .collect();
        let provenance = format!("{}⊕{}", self.provenance, other.provenance);
        let b = other.size;
        Ok(Self::from_fn(size, labels, provenance, |x, y| {
            self.op(x / b, y / b) * b + other.op(x % b, y % b)
        }))
    }

    /// Exhaustive axiom check with lexicographically first counterexamples.
    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.size;
        let idempotent = match (0..n).find(|&q| self.op(q, q) != q) {
            Some(q) => Law::failed(q),
            None => Law::passed(),
        };

        let mut right = Law::passed();
        'right: for p in 0..n {
            for q in 0..n {
                let pq = self.op(p, q);
                for r in 0..n {
                    if self.op(pq, r) != self.op(self.op(p, r), self.op(q, r)) {
                        right = Law::failed((p, q, r));
                        break 'right;
                    }
                }
            }
        }

        let mut left = Law::passed();
        'left: for p in 0..n {
            for q in 0..n {
                let pq = self.op(p, q);
                for r in 0..n {
                    if self.op(p, self.op(q, r)) != self.op(pq, self.op(p, r)) {
                        left = Law::failed((p, q, r));
                        break 'left;
                    }
                }
            }
        }

        let mut commutative = Law::passed();
        'comm: for p in 0..n {
            for q in p + 1..n {
                if self.op(p, q) != self.op(q, p) {
                    commutative = Law::failed((p, q));
                    break 'comm;
                }
            }
        }

        // counts[q][p] = #{ r : r * q = p }
        let mut counts = vec![0u32; n * n];
        for r in 0..n {
            for q in 0..n {
                counts[q * n + self.op(r, q)] += 1;
            }
        }
        let mut bijective = Law::passed();
        'bij: for p in 0..n {
            for q in 0..n {
                if counts[q * n + p] != 1 {
                    bijective = Law::failed((p, q));
                    break 'bij;
                }
            }
        }

        let classification = match (idempotent.holds, right.holds, bijective.holds) {
            (true, true, true) => Classification::Quandle,
            (false, true, true) => Classification::Rack,
            (true, true, false) => Classification::Pseudoquandle,
            _ => Classification::MagmaOnly,
        };

        AxiomReport {
            idempotent,
            right_self_distributive: right,
            left_self_distributive: left,
            commutative,
            right_translations_bijective: bijective,
            classification,
        }
    }

    /// Parses a magma source: a family spec (`trivial:<n>`, `dihedral:<n>`,
    /// `alexander:<n>:<t>`, `symplectic:<n>`, `conj:<group>:<e>`), the
    /// normal-subgroup magma of a group (`pg:<group>`), or `file:<path>`
    /// holding a magma document.
    pub fn from_source(source: &str, limits: &Limits) -> Result<Self> {
        let source = source.trim();
        if let Some(path) = source.strip_prefix("file:") {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
                path: path.to_string(),
                source: e,
            })?;
            let doc: MagmaDoc = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("bad magma document {path}: {e}")))?;
            return Self::from_doc(&doc, source.to_string(), limits);
        }
        if let Some(spec) = source.strip_prefix("pg:") {
            let group = GroupTable::build_with(spec, limits)?;
            return normal_subgroup_magma(&group, limits);
        }
        let mut parts = source.splitn(2, ':');
        let family = parts.next().unwrap_or_default();
        let rest = parts.next();
        let int = |s: &str, what: &str| -> Result<usize> {
            s.parse()
                .map_err(|_| Error::Parse(format!("bad {what} in `{source}`")))
        };
        let capped = |size: usize| -> Result<usize> {
            if size > limits.max_magma {
                Err(Error::SizeLimit {
                    what: "magma size",
                    actual: size,
                    cap: limits.max_magma,
                })
            } else {
                Ok(size)
            }
        };
        match family {
            "trivial" => {
                let n = int(rest.ok_or_else(|| Error::Parse(format!("`{source}`: missing size")))?, "size")?;
                Self::trivial_quandle(capped(n)?)
            }
            "dihedral" => {
                let n = int(rest.ok_or_else(|| Error::Parse(format!("`{source}`: missing modulus")))?, "modulus")?;
                Self::dihedral_quandle(capped(n)?)
            }
            "alexander" => {
                let rest = rest.ok_or_else(|| Error::Parse(format!("`{source}`: missing parameters")))?;
                let (n, t) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("`{source}`: expected alexander:<n>:<t>")))?;
                Self::alexander_quandle(capped(int(n, "modulus")?)?, int(t, "multiplier")?)
            }
            "symplectic" => {
                let n = int(rest.ok_or_else(|| Error::Parse(format!("`{source}`: missing modulus")))?, "modulus")?;
                capped(n.checked_mul(n).unwrap_or(usize::MAX))?;
                Self::symplectic_quandle(n)
            }
            "conj" => {
                let rest = rest.ok_or_else(|| Error::Parse(format!("`{source}`: missing group")))?;
                // The exponent is the final `:`-separated integer; default 1.
                let (spec, exponent) = match rest.rsplit_once(':') {
                    Some((left, last)) => match last.parse::<i64>() {
                        Ok(e) => (left, e),
                        Err(_) => (rest, 1),
                    },
                    None => (rest, 1),
                };
                let group = GroupTable::build_with(spec, limits)?;
                Ok(Self::conjugation_quandle(&group, exponent))
            }
            _ => Err(Error::Parse(format!(
                "unknown magma source `{source}` (expected trivial:, dihedral:, alexander:, symplectic:, conj:, pg:, or file:)"
            ))),
        }
    }
}

/// The magma of all normal subgroups of `group` under setwise product, in
/// canonical order (trivial subgroup first, whole group last).
pub fn normal_subgroup_magma(group: &GroupTable, limits: &Limits) -> Result<FiniteMagma> {
    let subs = group.normal_subgroups_with(limits)?;
    let n = subs.len();
    if n > limits.max_magma {
        return Err(Error::SizeLimit {
            what: "magma size",
            actual: n,
            cap: limits.max_magma,
        });
    }
    let index_of: std::collections::HashMap<&crate::bitset::IndexSet, usize> = subs
        .iter()
        .enumerate()
        .map(|(i, s)| (s.members(), i))
        .collect();
    let mut op = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in i..n {
            let product = group
                .subgroup_product(&subs[i], &subs[j])
                .expect("normal inputs");
            let k = *index_of
                .get(product.members())
                .expect("product of normal subgroups is normal");
            op[i][j] = k;
            op[j][i] = k;
        }
    }
    let labels = subs.iter().map(|s| group.subgroup_label(s)).collect();
    FiniteMagma::from_table(op, labels, format!("pg:{}", group.spec_string()))
}

/// All `r` with `r * q = p`: the preimage of `p` under the right translation
/// by `q`. Empty or multi-valued exactly where axiom (iii) fails.
pub fn translation_preimages(m: &FiniteMagma, p: usize, q: usize) -> Vec<usize> {
    (0..m.size()).filter(|&r| m.op(r, q) == p).collect()
}

fn gcd(a: usize, b: usize) -> usize {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_rows_are_constant() {
        let m = FiniteMagma::trivial_quandle(3).unwrap();
        assert_eq!(m.rows(), vec![vec![0, 0, 0], vec![1, 1, 1], vec![2, 2, 2]]);
        assert_eq!(m.check_axioms().classification, Classification::Quandle);
    }

    #[test]
    fn dihedral_formula() {
        let m = FiniteMagma::dihedral_quandle(3).unwrap();
        assert_eq!(m.op(0, 1), 2);
        assert_eq!(m.check_axioms().classification, Classification::Quandle);
    }

    #[test]
    fn alexander_formula_and_unit_check() {
        let m = FiniteMagma::alexander_quandle(5, 2).unwrap();
        assert_eq!(m.op(1, 3), 4);
        assert_eq!(m.check_axioms().classification, Classification::Quandle);
        assert!(matches!(
            FiniteMagma::alexander_quandle(4, 2),
            Err(Error::BadParameter(_))
        ));
    }

    #[test]
    fn symplectic_family() {
        let m = FiniteMagma::symplectic_quandle(3).unwrap();
        assert_eq!(m.size(), 9);
        assert_eq!(m.check_axioms().classification, Classification::Quandle);
        assert!(matches!(
            FiniteMagma::symplectic_quandle(4),
            Err(Error::BadParameter(_))
        ));
    }

    #[test]
    fn conjugation_family() {
        let g = GroupTable::build("Q8").unwrap();
        let m = FiniteMagma::conjugation_quandle(&g, 1);
        assert_eq!(m.check_axioms().classification, Classification::Quandle);
        let m2 = FiniteMagma::conjugation_quandle(&g, -1);
        assert_eq!(m2.check_axioms().classification, Classification::Quandle);
        // Exponents act modulo element orders.
        let huge = FiniteMagma::conjugation_quandle(&g, 8 * 1_000_000_007 + 1);
        assert_eq!(huge.rows(), m.rows());
    }

    #[test]
    fn source_caps_apply_before_construction() {
        let limits = Limits::default();
        for big in [
            "trivial:100000000",
            "dihedral:100000000",
            "alexander:100000000:3",
            "symplectic:100000001",
        ] {
            assert!(
                matches!(
                    FiniteMagma::from_source(big, &limits),
                    Err(Error::SizeLimit { .. })
                ),
                "{big}"
            );
        }
    }

    #[test]
    fn pg_of_trivial_group() {
        let g = GroupTable::build("Z1").unwrap();
        let m = normal_subgroup_magma(&g, &Limits::default()).unwrap();
        assert_eq!(m.size(), 1);
        assert_eq!(m.rows(), vec![vec![0]]);
    }

    #[test]
    fn pg_of_prime_square_is_a_chain() {
        let g = GroupTable::build("Z4").unwrap();
        let m = normal_subgroup_magma(&g, &Limits::default()).unwrap();
        assert_eq!(
            m.rows(),
            vec![vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 2]],
            "subgroup product on a chain is max"
        );
    }

    #[test]
    fn pg_of_quaternions_fails_bijectivity() {
        let g = GroupTable::build("Q8").unwrap();
        let m = normal_subgroup_magma(&g, &Limits::default()).unwrap();
        assert_eq!(m.size(), 6);
        let report = m.check_axioms();
        assert_eq!(report.classification, Classification::Pseudoquandle);
        assert!(report.idempotent.holds);
        assert!(report.commutative.holds);
        assert!(report.right_self_distributive.holds);
        assert!(report.left_self_distributive.holds);
        // First failing pair in (p,q) order: no r with r * {±1} = {1}.
        assert_eq!(
            report.right_translations_bijective.counterexample,
            Some((0, 1))
        );
        // The classical witness: p = {±1,±i}, q = {±1,±j} has no preimage.
        assert_eq!(m.label(2), "{1,-1,i,-i}");
        assert_eq!(m.label(3), "{1,-1,j,-j}");
        assert!(translation_preimages(&m, 2, 3).is_empty());
    }

    #[test]
    fn direct_sum_componentwise() {
        let a = FiniteMagma::from_fn(
            3,
            vec!["1".into(), "2".into(), "3".into()],
            "[3]".into(),
            |i, j| i.max(j),
        );
        let b = FiniteMagma::from_fn(2, vec!["1".into(), "2".into()], "[2]".into(), |i, j| {
            i.max(j)
        });
        let s = a.direct_sum(&b, &Limits::default()).unwrap();
        assert_eq!(s.size(), 6);
        // (2,1) * (1,2) = (2,2) in 1-based coordinates.
        assert_eq!(s.op(2, 1), 3);
        assert_eq!(s.label(3), "(2,2)");

        let p = FiniteMagma::point();
        let sp = a.direct_sum(&p, &Limits::default()).unwrap();
        assert_eq!(sp.size(), 3);
        assert_eq!(sp.rows(), a.rows());
    }

    #[test]
    fn direct_sum_size_cap() {
        let a = FiniteMagma::trivial_quandle(8).unwrap();
        let tight = Limits {
            max_magma: 63,
            ..Limits::default()
        };
        assert!(matches!(
            a.direct_sum(&a, &tight),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn doc_round_trip() {
        let m = FiniteMagma::dihedral_quandle(5).unwrap();
        let doc = m.to_doc();
        let text = serde_json::to_string(&doc).unwrap();
        let parsed: MagmaDoc = serde_json::from_str(&text).unwrap();
        let back = FiniteMagma::from_doc(&parsed, "round".into(), &Limits::default()).unwrap();
        assert_eq!(back.rows(), m.rows());
        assert_eq!(back.labels(), m.labels());
    }

    #[test]
    fn source_parsing() {
        let limits = Limits::default();
        assert_eq!(
            FiniteMagma::from_source("trivial:4", &limits)
                .unwrap()
                .size(),
            4
        );
        assert_eq!(
            FiniteMagma::from_source("pg:Z4", &limits).unwrap().size(),
            3
        );
        assert_eq!(
            FiniteMagma::from_source("conj:S3", &limits).unwrap().size(),
            6
        );
        assert_eq!(
            FiniteMagma::from_source("alexander:7:3", &limits)
                .unwrap()
                .size(),
            7
        );
        for bad in ["nope:3", "alexander:7", "trivial:x", "dihedral:"] {
            assert!(FiniteMagma::from_source(bad, &limits).is_err(), "{bad}");
        }
    }

    #[test]
    fn rack_and_magma_only_classification() {
        // Constant-shift rack on Z/3: i * j = i + 1. Right translations are
        // bijective and distributivity holds, but idempotence fails.
        let m = FiniteMagma::from_fn(
            3,
            vec!["0".into(), "1".into(), "2".into()],
            "shift".into(),
            |i, _| (i + 1) % 3,
        );
        let report = m.check_axioms();
        assert_eq!(report.classification, Classification::Rack);
        assert_eq!(report.idempotent.counterexample, Some(0));

        let junk = FiniteMagma::from_table(
            vec![vec![1, 0], vec![0, 0]],
            vec!["a".into(), "b".into()],
            "junk".into(),
        )
        .unwrap();
        assert_eq!(
            junk.check_axioms().classification,
            Classification::MagmaOnly
        );
    }
}
