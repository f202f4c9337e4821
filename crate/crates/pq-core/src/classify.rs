//! Primary decomposition of finite abelian specs and the chain-product
//! normal form their normal-subgroup magmas are expected to realize.
//!
//! The normal form is a direct sum of gcd-segments (for free factors,
//! truncated to `{1..N}`, which is closed because a gcd never exceeds its
//! arguments) and max-chains `[m+1]` (one per prime-power factor).

use std::fmt;

use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::iso::{find_isomorphism, IsomorphismWitness};
use crate::magma::{normal_subgroup_magma, FiniteMagma};
use crate::Limits;

/// A finitely generated abelian group, in primary-decomposition form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianSpec {
    pub free_rank: usize,
    /// Canonically sorted prime powers: ascending by prime, then exponent.
    pub prime_powers: Vec<(u64, u32)>,
}

/// One factor of the normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LFactor {
    /// `{1..size}` under max.
    MaxChain { size: usize },
    /// `{1..bound}` under gcd.
    GcdSegment { bound: usize },
}

impl fmt::Display for LFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LFactor::MaxChain { size } => write!(f, "[{size}]"),
            LFactor::GcdSegment { bound } => write!(f, "gcd[1..{bound}]"),
        }
    }
}

/// The normal form: its factor list and the realized product magma.
#[derive(Clone, Debug)]
pub struct LStructure {
    pub factors: Vec<LFactor>,
    pub realized: FiniteMagma,
}

impl fmt::Display for LStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "[1]");
        }
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join("⊕"))
    }
}

/// `{1..k}` under max.
pub fn max_chain(k: usize) -> FiniteMagma {
    assert!(k > 0);
    FiniteMagma::from_fn(
        k,
        (1..=k).map(|i| i.to_string()).collect(),
        format!("[{k}]"),
        |i, j| i.max(j),
    )
}

/// `{1..bound}` under gcd.
pub fn gcd_segment(bound: usize) -> FiniteMagma {
    assert!(bound > 0);
    FiniteMagma::from_fn(
        bound,
        (1..=bound).map(|i| i.to_string()).collect(),
        format!("gcd[1..{bound}]"),
        |i, j| gcd(i + 1, j + 1) - 1,
    )
}

fn gcd(a: usize, b: usize) -> usize {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        factors.push((n, 1));
    }
    factors
}

/// Reads a product of cyclic factors (`Z12`, `Z8xZ9`, ...) into canonical
/// primary-decomposition form. Non-cyclic atoms are rejected.
pub fn primary_decomposition(spec: &str) -> Result<AbelianSpec> {
    let spec = spec.trim();
    if spec.is_empty() {
        return Err(Error::Parse("empty group spec".into()));
    }
    let mut prime_powers = Vec::new();
    for token in spec.split('x') {
        let rest = token.strip_prefix('Z').ok_or_else(|| {
            Error::NotAbelian(format!(
                "`{token}` is not a cyclic factor; only Z<n> products decompose"
            ))
        })?;
        let n: u64 = rest
            .parse()
            .map_err(|_| Error::Parse(format!("bad cyclic order in `{token}`")))?;
        if n == 0 {
            return Err(Error::Parse(format!(
                "`{token}`: cyclic order must be positive"
            )));
        }
        prime_powers.extend(factorize(n));
    }
    prime_powers.sort_unstable();
    Ok(AbelianSpec {
        free_rank: 0,
        prime_powers,
    })
}

/// Realizes the normal form for `spec`, truncating each free factor to the
/// gcd-closed segment `{1..bound}`.
pub fn build_l(spec: &AbelianSpec, bound: usize, limits: &Limits) -> Result<LStructure> {
    if bound == 0 {
        return Err(Error::BadParameter(
            "gcd-segment bound must be positive".into(),
        ));
    }
    let mut factors = Vec::new();
    for _ in 0..spec.free_rank {
        factors.push(LFactor::GcdSegment { bound });
    }
    for &(_, m) in &spec.prime_powers {
        factors.push(LFactor::MaxChain {
            size: m as usize + 1,
        });
    }
    let mut realized: Option<FiniteMagma> = None;
    for factor in &factors {
        let piece = match *factor {
            LFactor::MaxChain { size } => max_chain(size),
            LFactor::GcdSegment { bound } => gcd_segment(bound),
        };
        realized = Some(match realized {
            None => piece,
            Some(acc) => acc.direct_sum(&piece, limits)?,
        });
    }
    Ok(LStructure {
        factors,
        realized: realized.unwrap_or_else(FiniteMagma::point),
    })
}

/// A successful classification of one abelian group spec.
#[derive(Clone, Debug)]
pub struct ClassificationOutcome {
    pub decomposition: AbelianSpec,
    pub normal_form: LStructure,
    pub subgroup_magma: FiniteMagma,
    pub witness: IsomorphismWitness,
}

/// Computes the normal-subgroup magma of a finite abelian spec, builds the
/// normal form from its primary decomposition, and searches for an explicit
/// isomorphism. Failure to find one is reported loudly: for this family the
/// normal form is expected to be realized, so a missing witness means the
/// expectation is violated.
pub fn verify_abelian_classification(
    g_spec: &str,
    bound: usize,
    limits: &Limits,
) -> Result<ClassificationOutcome> {
    let decomposition = primary_decomposition(g_spec)?;
    let group = GroupTable::build_with(g_spec, limits)?;
    debug_assert!(group.is_abelian());
    let subgroup_magma = normal_subgroup_magma(&group, limits)?;
    let normal_form = build_l(&decomposition, bound, limits)?;
    let iso_limits = Limits {
        max_iso: limits.max_iso.max(subgroup_magma.size()),
        ..limits.clone()
    };
    match find_isomorphism(&subgroup_magma, &normal_form.realized, &iso_limits)? {
        Some(witness) => Ok(ClassificationOutcome {
            decomposition,
            normal_form,
            subgroup_magma,
            witness,
        }),
        None => Err(Error::ClassificationViolation(format!(
            "{g_spec}: the {}-element normal-subgroup magma does not match {normal_form} ({} elements)",
            subgroup_magma.size(),
            normal_form.realized.size(),
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::magma::Classification;

    fn min_chain(k: usize) -> FiniteMagma {
        FiniteMagma::from_fn(
            k,
            (1..=k).map(|i| i.to_string()).collect(),
            format!("min[{k}]"),
            |i, j| i.min(j),
        )
    }

    fn divisor_magma(n: usize) -> FiniteMagma {
        let divisors: Vec<usize> = (1..=n).filter(|d| n % d == 0).collect();
        let pos = |v: usize| divisors.iter().position(|&d| d == v).unwrap();
        FiniteMagma::from_fn(
            divisors.len(),
            divisors.iter().map(|d| d.to_string()).collect(),
            format!("div({n})"),
            |i, j| pos(gcd(divisors[i], divisors[j])),
        )
    }

    #[test]
    fn decomposition_examples() {
        assert_eq!(
            primary_decomposition("Z12").unwrap().prime_powers,
            vec![(2, 2), (3, 1)]
        );
        assert_eq!(
            primary_decomposition("Z7").unwrap().prime_powers,
            vec![(7, 1)]
        );
        assert_eq!(
            primary_decomposition("Z4xZ2").unwrap().prime_powers,
            vec![(2, 1), (2, 2)]
        );
        assert_eq!(primary_decomposition("Z1").unwrap().prime_powers, vec![]);
        assert!(matches!(
            primary_decomposition("S3"),
            Err(Error::NotAbelian(_))
        ));
        assert!(matches!(
            primary_decomposition("Z4xD6"),
            Err(Error::NotAbelian(_))
        ));
    }

    #[test]
    fn build_l_examples() {
        let limits = Limits::default();
        let chain = build_l(
            &AbelianSpec {
                free_rank: 0,
                prime_powers: vec![(5, 2)],
            },
            30,
            &limits,
        )
        .unwrap();
        assert_eq!(chain.realized.size(), 3);
        assert_eq!(chain.to_string(), "[3]");

        let free = build_l(
            &AbelianSpec {
                free_rank: 1,
                prime_powers: vec![],
            },
            6,
            &limits,
        )
        .unwrap();
        assert_eq!(free.realized.size(), 6);
        // 4 * 6 = 2 under gcd, at 0-based indices 3, 5 -> 1.
        assert_eq!(free.realized.op(3, 5), 1);

        let empty = build_l(
            &AbelianSpec {
                free_rank: 0,
                prime_powers: vec![],
            },
            30,
            &limits,
        )
        .unwrap();
        assert_eq!(empty.realized.size(), 1);
        assert_eq!(empty.to_string(), "[1]");
    }

    #[test]
    fn realized_forms_are_commutative_pseudoquandles() {
        let limits = Limits::default();
        let l = build_l(
            &AbelianSpec {
                free_rank: 1,
                prime_powers: vec![(2, 2), (3, 1)],
            },
            6,
            &limits,
        )
        .unwrap();
        let report = l.realized.check_axioms();
        assert!(report.idempotent.holds);
        assert!(report.commutative.holds);
        assert!(report.right_self_distributive.holds);
        assert!(report.left_self_distributive.holds);
    }

    #[test]
    fn classification_of_cyclic_groups() {
        let limits = Limits::default();
        let outcome = verify_abelian_classification("Z12", 30, &limits).unwrap();
        assert_eq!(outcome.normal_form.to_string(), "[3]⊕[2]");
        assert!(outcome.witness.verified);

        let prime = verify_abelian_classification("Z7", 30, &limits).unwrap();
        assert_eq!(prime.normal_form.to_string(), "[2]");

        let big = verify_abelian_classification("Z8xZ9", 30, &limits).unwrap();
        assert_eq!(big.normal_form.to_string(), "[4]⊕[3]");
        assert_eq!(big.subgroup_magma.size(), 12);
    }

    #[test]
    fn classification_fails_for_z2xz2() {
        // Z2xZ2 has five subgroups but the chain product [2]⊕[2] has four
        // elements: the normal form cannot be realized when the torsion part
        // repeats a prime.
        let err = verify_abelian_classification("Z2xZ2", 30, &Limits::default());
        assert!(matches!(err, Err(Error::ClassificationViolation(_))));
    }

    #[test]
    fn min_and_max_chains_are_isomorphic() {
        let limits = Limits::default();
        for k in 1..=8 {
            let w = find_isomorphism(&max_chain(k), &min_chain(k), &limits)
                .unwrap()
                .unwrap();
            assert!(w.verified, "k = {k}");
        }
    }

    #[test]
    fn cyclic_subgroup_magmas_match_divisor_gcd_structure() {
        let limits = Limits::default();
        for n in [6usize, 12, 30] {
            let group = GroupTable::build(&format!("Z{n}")).unwrap();
            let pg = normal_subgroup_magma(&group, &limits).unwrap();
            let div = divisor_magma(n);
            assert!(
                find_isomorphism(&pg, &div, &limits).unwrap().is_some(),
                "Z{n}"
            );
        }
    }

    #[test]
    fn gcd_segment_is_classified_as_pseudoquandle() {
        let seg = gcd_segment(30);
        let report = seg.check_axioms();
        assert_eq!(report.classification, Classification::Pseudoquandle);
        assert!(report.commutative.holds);
    }
}
