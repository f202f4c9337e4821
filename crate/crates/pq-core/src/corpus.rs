//! The built-in group corpus used by bulk verification.
//!
//! One canonical spec per isomorphism class: every abelian group of order at
//! most 32, the dihedral groups of orders 6 through 16, the quaternion group,
//! and S3, S4, A4, A5. Order is deterministic (sorted by spec string).

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

/// All partitions of `k`, parts in descending order.
fn partitions(k: u32) -> Vec<Vec<u32>> {
    fn rec(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            current.push(part);
            rec(remaining - part, part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, &mut Vec::new(), &mut out);
    out
}

/// One spec string per isomorphism class of abelian groups of order
/// `1..=max_order`. Cyclic classes collapse to `Z<n>`; the rest list one
/// cyclic factor per prime-power, primes ascending, exponents descending
/// within a prime (`Z4xZ2`, `Z8xZ9`).
pub fn abelian_iso_class_specs(max_order: usize) -> Vec<String> {
    let mut specs = Vec::new();
    for n in 1..=max_order as u64 {
        let primes = factorize(n);
        let per_prime: Vec<(u64, Vec<Vec<u32>>)> =
            primes.iter().map(|&(p, e)| (p, partitions(e))).collect();
        let mut combos: Vec<Vec<(u64, Vec<u32>)>> = vec![Vec::new()];
        for (p, parts) in &per_prime {
            let mut next = Vec::new();
            for combo in &combos {
                for part in parts {
                    let mut extended = combo.clone();
                    extended.push((*p, part.clone()));
                    next.push(extended);
                }
            }
            combos = next;
        }
        for combo in combos {
            let cyclic = combo.iter().all(|(_, part)| part.len() == 1);
            if cyclic {
                specs.push(format!("Z{n}"));
                continue;
            }
            let factors: Vec<String> = combo
                .iter()
                .flat_map(|(p, part)| part.iter().map(move |&e| format!("Z{}", p.pow(e))))
                .collect();
            specs.push(factors.join("x"));
        }
    }
    specs.sort();
    specs
}

/// The fixed verification corpus, sorted by spec string.
pub fn corpus_group_specs() -> Vec<String> {
    let mut specs = abelian_iso_class_specs(32);
    for order in [6, 8, 10, 12, 14, 16] {
        specs.push(format!("D{order}"));
    }
    specs.extend(["Q8", "S3", "S4", "A4", "A5"].map(String::from));
    specs.sort();
    specs.dedup();
    specs
}
