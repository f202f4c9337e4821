//! Finite groups as validated Cayley tables.
//!
//! Groups are built from a small spec language (`Z12`, `Z4xZ2`, `D8`, `Q8`,
//! `S4`, `A5`, `file:<path>`) or ingested from a JSON table document. Every
//! construction path runs the full validation: closure, a two-sided identity,
//! exhaustive associativity, and two-sided inverses. Construction fails rather
//! than producing an unvalidated table.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::bitset::IndexSet;
use crate::error::{Error, GroupDefect, Result};
use crate::Limits;

/// A finite group with elements `0..order` and a flat row-major Cayley table.
#[derive(Clone, Debug)]
pub struct GroupTable {
    order: usize,
    cayley: Vec<u32>,
    identity: usize,
    inverses: Vec<u32>,
    labels: Vec<String>,
    spec: String,
}

/// JSON document for an explicit Cayley table: row-major, 0-based indices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CayleyDoc {
    pub order: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub table: Vec<Vec<usize>>,
}

/// A subgroup given by its member set, with normality decided at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    members: IndexSet,
    size: usize,
    is_normal: bool,
}

impl Subgroup {
    pub fn members(&self) -> &IndexSet {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_normal(&self) -> bool {
        self.is_normal
    }
}

/// The conjugacy classes of a group as disjoint index sets covering `0..n`.
#[derive(Clone, Debug)]
pub struct ConjugacyPartition {
    blocks: Vec<IndexSet>,
}

impl ConjugacyPartition {
    pub fn blocks(&self) -> &[IndexSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

enum Atom {
    Cyclic(usize),
    Dihedral(usize),
    Quaternion,
    Symmetric(usize),
    Alternating(usize),
}

impl Atom {
    fn order(&self) -> usize {
        match *self {
            Atom::Cyclic(n) => n,
            Atom::Dihedral(order) => order,
            Atom::Quaternion => 8,
            Atom::Symmetric(n) => factorial(n),
            Atom::Alternating(n) => factorial(n).div_ceil(2),
        }
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product::<usize>().max(1)
}

fn parse_atom(token: &str) -> Result<Atom> {
    let bad = |msg: String| Error::Parse(msg);
    if let Some(rest) = token.strip_prefix('Z') {
        let n: usize = rest
            .parse()
            .map_err(|_| bad(format!("bad cyclic order in `{token}`")))?;
        if n == 0 {
            return Err(bad(format!("`{token}`: cyclic order must be positive")));
        }
        return Ok(Atom::Cyclic(n));
    }
    if token == "Q8" {
        return Ok(Atom::Quaternion);
    }
    if let Some(rest) = token.strip_prefix('D') {
        let order: usize = rest
            .parse()
            .map_err(|_| bad(format!("bad dihedral order in `{token}`")))?;
        if order < 2 || order % 2 != 0 {
            return Err(bad(format!(
                "`{token}`: dihedral order must be even and at least 2"
            )));
        }
        return Ok(Atom::Dihedral(order));
    }
    if let Some(rest) = token.strip_prefix('S') {
        let n: usize = rest
            .parse()
            .map_err(|_| bad(format!("bad symmetric degree in `{token}`")))?;
        if !(1..=5).contains(&n) {
            return Err(bad(format!("`{token}`: symmetric degree must be 1..=5")));
        }
        return Ok(Atom::Symmetric(n));
    }
    if let Some(rest) = token.strip_prefix('A') {
        let n: usize = rest
            .parse()
            .map_err(|_| bad(format!("bad alternating degree in `{token}`")))?;
        if !(1..=5).contains(&n) {
            return Err(bad(format!("`{token}`: alternating degree must be 1..=5")));
        }
        return Ok(Atom::Alternating(n));
    }
    Err(bad(format!(
        "unknown group atom `{token}` (expected Z<n>, D<2n>, Q8, S<n>, A<n>)"
    )))
}

/// Carrier labels plus a raw multiplication table, pre-validation.
struct RawTable {
    labels: Vec<String>,
    table: Vec<u32>,
}

fn cyclic(n: usize) -> RawTable {
    let labels = (0..n).map(|i| i.to_string()).collect();
    let mut table = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            table[i * n + j] = ((i + j) % n) as u32;
        }
    }
    RawTable { labels, table }
}

fn dihedral(order: usize) -> RawTable {
    // Element (k, i) = s^k r^i at index k*n + i; s r^i s = r^{-i}.
    let n = order / 2;
    let labels = (0..order)
        .map(|idx| {
            let (k, i) = (idx / n, idx % n);
            if k == 0 {
                format!("r{i}")
            } else {
                format!("s{i}")
            }
        })
        .collect();
    let mut table = vec![0u32; order * order];
    for a in 0..order {
        let (k1, i1) = (a / n, a % n);
        for b in 0..order {
            let (k2, i2) = (b / n, b % n);
            let k = k1 ^ k2;
            let i = if k2 == 1 {
                (n - i1 + i2) % n
            } else {
                (i1 + i2) % n
            };
            table[a * order + b] = (k * n + i) as u32;
        }
    }
    RawTable { labels, table }
}

fn quaternion() -> RawTable {
    // Index 2b + s encodes (-1)^s times the basis unit b in (1, i, j, k).
    const BASIS: [[(u32, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut table = vec![0u32; 64];
    for a in 0..8 {
        let (s1, b1) = (a % 2, a / 2);
        for b in 0..8 {
            let (s2, b2) = (b % 2, b / 2);
            let (flip, basis) = BASIS[b1][b2];
            let sign = (s1 as u32) ^ (s2 as u32) ^ flip;
            table[a * 8 + b] = (2 * basis) as u32 + sign;
        }
    }
    RawTable { labels, table }
}

fn permutations(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::with_capacity(factorial(n));
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, current: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                current.push(v as u8);
                rec(n, current, used, out);
                current.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut current, &mut used, &mut out);
    out
}

fn parity_even(perm: &[u8]) -> bool {
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

fn permutation_group(n: usize, even_only: bool) -> RawTable {
    let perms: Vec<Vec<u8>> = permutations(n)
        .into_iter()
        .filter(|p| !even_only || parity_even(p))
        .collect();
    let order = perms.len();
    let index_of = |p: &[u8]| perms.iter().position(|q| q == p).expect("closed");
    let labels = perms
        .iter()
        .map(|p| p.iter().map(|d| d.to_string()).collect::<String>())
        .collect();
    let mut table = vec![0u32; order * order];
    for (a, p) in perms.iter().enumerate() {
        for (b, q) in perms.iter().enumerate() {
            // (p·q)(x) = p(q(x))
            let composed: Vec<u8> = (0..n).map(|x| p[q[x] as usize]).collect();
            table[a * order + b] = index_of(&composed) as u32;
        }
    }
    RawTable { labels, table }
}

fn build_atom(atom: &Atom) -> RawTable {
    match *atom {
        Atom::Cyclic(n) => cyclic(n),
        Atom::Dihedral(order) => dihedral(order),
        Atom::Quaternion => quaternion(),
        Atom::Symmetric(n) => permutation_group(n, false),
        Atom::Alternating(n) => permutation_group(n, true),
    }
}

fn direct_product(parts: &[RawTable]) -> RawTable {
    let orders: Vec<usize> = parts.iter().map(|p| p.labels.len()).collect();
    let total: usize = orders.iter().product();
    let decode = |mut idx: usize| -> Vec<usize> {
        let mut coords = vec![0usize; orders.len()];
        for pos in (0..orders.len()).rev() {
            coords[pos] = idx % orders[pos];
            idx /= orders[pos];
        }
        coords
    };
    let encode = |coords: &[usize]| -> usize {
        coords
            .iter()
            .zip(&orders)
            .fold(0usize, |acc, (&c, &o)| acc * o + c)
    };
    let labels = (0..total)
        .map(|idx| {
            let coords = decode(idx);
            let inner: Vec<&str> = coords
                .iter()
                .zip(parts)
                .map(|(&c, p)| p.labels[c].as_str())
                .collect();
            format!("({})", inner.join(","))
        })
        .collect();
    let mut table = vec![0u32; total * total];
    for a in 0..total {
        let ca = decode(a);
        for b in 0..total {
            let cb = decode(b);
            let prod: Vec<usize> = ca
                .iter()
                .zip(&cb)
                .zip(parts)
                .map(|((&x, &y), p)| {
                    let o = p.labels.len();
                    p.table[x * o + y] as usize
                })
                .collect();
            table[a * total + b] = encode(&prod) as u32;
        }
    }
    RawTable { labels, table }
}

impl GroupTable {
    /// Builds a group from a spec string with the default [`Limits`].
    pub fn build(spec: &str) -> Result<Self> {
        Self::build_with(spec, &Limits::default())
    }

    pub fn build_with(spec: &str, limits: &Limits) -> Result<Self> {
        let spec = spec.trim();
        if spec.is_empty() {
            return Err(Error::Parse("empty group spec".into()));
        }
        if let Some(path) = spec.strip_prefix("file:") {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
                path: path.to_string(),
                source: e,
            })?;
            let doc: CayleyDoc = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("bad table document {path}: {e}")))?;
            return Self::from_doc(&doc, spec.to_string(), limits);
        }
        let atoms = spec
            .split('x')
            .map(parse_atom)
            .collect::<Result<Vec<Atom>>>()?;
        let mut order = 1usize;
        for atom in &atoms {
            order = order.checked_mul(atom.order()).ok_or(Error::SizeLimit {
                what: "group order",
                actual: usize::MAX,
                cap: limits.max_order,
            })?;
        }
        if order > limits.max_order {
            return Err(Error::SizeLimit {
                what: "group order",
                actual: order,
                cap: limits.max_order,
            });
        }
        let parts: Vec<RawTable> = atoms.iter().map(build_atom).collect();
        let raw = if parts.len() == 1 {
            parts.into_iter().next().expect("one part")
        } else {
            direct_product(&parts)
        };
        Self::validate(raw, spec.to_string())
    }

    /// Builds a group from an ingested Cayley-table document.
    pub fn from_doc(doc: &CayleyDoc, spec: String, limits: &Limits) -> Result<Self> {
        let n = doc.order;
        if n == 0 {
            return Err(Error::Parse(
                "table document: order must be positive".into(),
            ));
        }
        if n > limits.max_order {
            return Err(Error::SizeLimit {
                what: "group order",
                actual: n,
                cap: limits.max_order,
            });
        }
        if doc.table.len() != n || doc.table.iter().any(|row| row.len() != n) {
            return Err(Error::Parse(format!(
                "table document: expected an {n}x{n} table"
            )));
        }
        let labels = match &doc.labels {
            Some(given) if given.len() == n => given.clone(),
            Some(_) => return Err(Error::Parse(format!("table document: expected {n} labels"))),
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        let mut table = vec![0u32; n * n];
        for (r, row) in doc.table.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::NotAGroup(GroupDefect::Closure {
                        row: r,
                        col: c,
                        value: v,
                    }));
                }
                table[r * n + c] = v as u32;
            }
        }
        Self::validate(RawTable { labels, table }, spec)
    }

    /// Full validation: closure, identity, associativity, inverses.
    fn validate(raw: RawTable, spec: String) -> Result<Self> {
        let n = raw.labels.len();
        let table = raw.table;
        debug_assert_eq!(table.len(), n * n);
        for r in 0..n {
            for c in 0..n {
                let v = table[r * n + c] as usize;
                if v >= n {
                    return Err(Error::NotAGroup(GroupDefect::Closure {
                        row: r,
                        col: c,
                        value: v,
                    }));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| {
                (0..n).all(|x| table[e * n + x] as usize == x && table[x * n + e] as usize == x)
            })
            .ok_or(Error::NotAGroup(GroupDefect::NoIdentity))?;
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b] as usize;
                for c in 0..n {
                    let bc = table[b * n + c] as usize;
                    if table[ab * n + c] != table[a * n + bc] {
                        return Err(Error::NotAGroup(GroupDefect::Associativity { a, b, c }));
                    }
                }
            }
        }
        let mut inverses = vec![0u32; n];
        for a in 0..n {
            let inv = (0..n).find(|&b| {
                table[a * n + b] as usize == identity && table[b * n + a] as usize == identity
            });
            match inv {
                Some(b) => inverses[a] = b as u32,
                None => return Err(Error::NotAGroup(GroupDefect::NoInverse { element: a })),
            }
        }
        Ok(GroupTable {
            order: n,
            cayley: table,
            identity,
            inverses,
            labels: raw.labels,
            spec,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a * self.order + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn spec_string(&self) -> &str {
        &self.spec
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn to_doc(&self) -> CayleyDoc {
        CayleyDoc {
            order: self.order,
            labels: Some(self.labels.clone()),
            table: (0..self.order)
                .map(|r| (0..self.order).map(|c| self.mul(r, c)).collect())
                .collect(),
        }
    }

    /// Brute-force conjugacy classes: conjugate every element by everything.
    pub fn conjugacy_classes(&self) -> ConjugacyPartition {
        let n = self.order;
        let mut seen = IndexSet::empty(n);
        let mut blocks = Vec::new();
        for x in 0..n {
            if seen.contains(x) {
                continue;
            }
            let mut block = IndexSet::empty(n);
            for g in 0..n {
                block.insert(self.mul(self.mul(g, x), self.inv(g)));
            }
            for m in block.iter() {
                seen.insert(m);
            }
            blocks.push(block);
        }
        ConjugacyPartition { blocks }
    }

    /// Closes `seed` under the group product. In a finite group a nonempty
    /// product-closed set is a subgroup.
    pub fn closure(&self, seed: &IndexSet) -> IndexSet {
        let mut bits = seed.clone();
        let mut members: Vec<usize> = bits.iter().collect();
        let mut next = 0;
        while next < members.len() {
            let x = members[next];
            let mut j = 0;
            while j < members.len() {
                let y = members[j];
                for p in [self.mul(x, y), self.mul(y, x)] {
                    if bits.insert(p) {
                        members.push(p);
                    }
                }
                j += 1;
            }
            next += 1;
        }
        bits
    }

    fn is_normal_set(&self, members: &IndexSet) -> bool {
        (0..self.order).all(|g| {
            members
                .iter()
                .all(|h| members.contains(self.mul(self.mul(g, h), self.inv(g))))
        })
    }

    /// Wraps a member set as a validated [`Subgroup`] of this group.
    pub fn subgroup(&self, members: IndexSet) -> Result<Subgroup> {
        if members.universe() != self.order {
            return Err(Error::BadParameter(
                "member set has the wrong universe size".into(),
            ));
        }
        if !members.contains(self.identity) {
            return Err(Error::BadParameter(
                "not a subgroup: identity is missing".into(),
            ));
        }
        for a in members.iter() {
            if !members.contains(self.inv(a)) {
                return Err(Error::BadParameter(format!(
                    "not a subgroup: inverse of element {a} is missing"
                )));
            }
            for b in members.iter() {
                if !members.contains(self.mul(a, b)) {
                    return Err(Error::BadParameter(format!(
                        "not a subgroup: product {a}*{b} escapes the set"
                    )));
                }
            }
        }
        let size = members.len();
        debug_assert_eq!(self.order % size, 0);
        let is_normal = self.is_normal_set(&members);
        Ok(Subgroup {
            members,
            size,
            is_normal,
        })
    }

    /// Enumerates every normal subgroup, canonically ordered: ascending by
    /// size, ties broken lexicographically on the sorted member list. The
    /// trivial subgroup is first and the whole group last.
    ///
    /// Candidates grow from closures of unions with conjugacy classes, so
    /// each generated set is a union of classes and therefore normal.
    pub fn normal_subgroups(&self) -> Result<Vec<Subgroup>> {
        self.normal_subgroups_with(&Limits::default())
    }

    pub fn normal_subgroups_with(&self, limits: &Limits) -> Result<Vec<Subgroup>> {
        let classes = self.conjugacy_classes();
        let trivial = IndexSet::singleton(self.order, self.identity);
        let mut found: HashSet<IndexSet> = HashSet::new();
        found.insert(trivial.clone());
        let mut queue = vec![trivial];
        let mut next = 0;
        while next < queue.len() {
            let base = queue[next].clone();
            next += 1;
            for class in classes.blocks() {
                if class.is_subset(&base) {
                    continue;
                }
                let grown = self.closure(&base.union(class));
                if found.insert(grown.clone()) {
                    if found.len() > limits.max_subgroups {
                        return Err(Error::SizeLimit {
                            what: "normal subgroup count",
                            actual: found.len(),
                            cap: limits.max_subgroups,
                        });
                    }
                    queue.push(grown);
                }
            }
        }
        let mut subs: Vec<Subgroup> = found
            .into_iter()
            .map(|members| {
                debug_assert!(self.is_normal_set(&members));
                let size = members.len();
                Subgroup {
                    members,
                    size,
                    is_normal: true,
                }
            })
            .collect();
        subs.sort_by(|a, b| {
            a.size
                .cmp(&b.size)
                .then_with(|| a.members.cmp_members(&b.members))
        });
        Ok(subs)
    }

    /// Setwise product of two normal subgroups, itself a normal subgroup.
    pub fn subgroup_product(&self, h: &Subgroup, k: &Subgroup) -> Result<Subgroup> {
        if !h.is_normal {
            return Err(Error::NotNormal(format!(
                "left factor {:?} fails the normality test",
                h.members
            )));
        }
        if !k.is_normal {
            return Err(Error::NotNormal(format!(
                "right factor {:?} fails the normality test",
                k.members
            )));
        }
        let mut members = IndexSet::empty(self.order);
        for a in h.members.iter() {
            for b in k.members.iter() {
                members.insert(self.mul(a, b));
            }
        }
        let size = members.len();
        debug_assert!(self.is_normal_set(&members));
        Ok(Subgroup {
            members,
            size,
            is_normal: true,
        })
    }

    /// Display label for a subgroup: member labels in brace notation.
    pub fn subgroup_label(&self, subgroup: &Subgroup) -> String {
        let inner: Vec<&str> = subgroup
            .members
            .iter()
            .map(|i| self.labels[i].as_str())
            .collect();
        format!("{{{}}}", inner.join(","))
    }

    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}
