//! Shared drivers for the randomized property suites: connection-number
//! identities, degree trichotomies and the sector property, over random
//! triangulations. Runs are seeded and deterministic.

use pdgn::polygon::Triangulation;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// A random triangulation of the n-gon from the apex-splitting recursion.
pub fn random_triangulation(n: usize, rng: &mut StdRng) -> Triangulation {
    fn split(lo: usize, hi: usize, rng: &mut StdRng, out: &mut Vec<(usize, usize)>) {
        if hi - lo < 2 {
            return;
        }
        let apex = rng.gen_range(lo + 1..hi);
        if apex - lo >= 2 {
            out.push((lo, apex));
        }
        if hi - apex >= 2 {
            out.push((apex, hi));
        }
        split(lo, apex, rng, out);
        split(apex, hi, rng, out);
    }
    let mut diags = Vec::new();
    split(1, n, rng, &mut diags);
    Triangulation::new(n, diags).expect("recursion yields a triangulation")
}

fn random_label(n: usize, rng: &mut StdRng) -> usize {
    rng.gen_range(1..=n)
}

pub struct SuiteOutcome {
    pub checks: usize,
    pub failures: Vec<String>,
}

/// Symmetry, splitting and telescoping of connection numbers.
pub fn suite_connection_numbers(trials: usize, seed: u64) -> SuiteOutcome {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut checks = 0;
    let mut failures = Vec::new();
    for _ in 0..trials {
        let n = rng.gen_range(4..=10);
        let t = random_triangulation(n, &mut rng);
        let c = |p, q, s, t2| t.connection_number(p, q, s, t2).unwrap();
        let in_interval = |start: usize, end: usize, x: usize| {
            if start <= end {
                start <= x && x <= end
            } else {
                x >= start || x <= end
            }
        };

        // symmetry
        let (p, q, s, t2) = (
            random_label(n, &mut rng),
            random_label(n, &mut rng),
            random_label(n, &mut rng),
            random_label(n, &mut rng),
        );
        checks += 1;
        if c(p, q, s, t2) != c(s, t2, p, q) {
            failures.push(format!("symmetry: n={n} t={t:?} ({p},{q},{s},{t2})"));
        }

        // splitting over disjoint intervals, both variants
        let (p, q) = (random_label(n, &mut rng), random_label(n, &mut rng));
        let (s, t2) = (random_label(n, &mut rng), random_label(n, &mut rng));
        let disjoint = (1..=n).all(|x| !(in_interval(p, q, x) && in_interval(s, t2, x)));
        if disjoint {
            let r = random_label(n, &mut rng);
            if in_interval(s, t2, r) && r != s {
                checks += 1;
                let prev = if r == 1 { n } else { r - 1 };
                if c(p, q, s, t2) != c(p, q, s, prev) + c(p, q, r, t2) {
                    failures.push(format!("splitting-1: n={n} t={t:?} ({p},{q},{s},{t2}) r={r}"));
                }
            }
            if in_interval(s, t2, r) && r != t2 {
                checks += 1;
                let next = r % n + 1;
                if c(p, q, s, t2) != c(p, q, s, r) + c(p, q, next, t2) {
                    failures.push(format!("splitting-2: n={n} t={t:?} ({p},{q},{s},{t2}) r={r}"));
                }
            }
        }

        // telescoping: C_{s,q}^{s,t} = C_{s,t}^{s,t} + C_{t+1,q}^{s,t}
        let (s, q) = (random_label(n, &mut rng), random_label(n, &mut rng));
        let t2 = random_label(n, &mut rng);
        if in_interval(s, q, t2) && t2 != q {
            checks += 1;
            let next = t2 % n + 1;
            if c(s, q, s, t2) != c(s, t2, s, t2) + c(next, q, s, t2) {
                failures.push(format!("telescoping: n={n} t={t:?} (s={s},q={q},t={t2})"));
            }
        }

        // C_{s,q}^{s,q} = C_{s,s}^{s+1,q} + C_{s+1,q}^{s+1,q}
        let (s, q) = (random_label(n, &mut rng), random_label(n, &mut rng));
        if s != q {
            checks += 1;
            let next = s % n + 1;
            if c(s, q, s, q) != c(s, s, next, q) + c(next, q, next, q) {
                failures.push(format!("peeling: n={n} t={t:?} (s={s},q={q})"));
            }
        }
    }
    SuiteOutcome { checks, failures }
}

/// A- and X-degree trichotomies and the exclusivity of the two connection
/// numbers, over random triangulations and quadruples.
pub fn suite_trichotomies(trials: usize, seed: u64) -> SuiteOutcome {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut checks = 0;
    let mut failures = Vec::new();
    for _ in 0..trials {
        let n = rng.gen_range(4..=10);
        let t = random_triangulation(n, &mut rng);
        let mut quad = [0usize; 4];
        loop {
            for q in quad.iter_mut() {
                *q = random_label(n, &mut rng);
            }
            quad.sort();
            if quad[0] < quad[1] && quad[1] < quad[2] && quad[2] < quad[3] {
                break;
            }
        }
        let [i, j, k, l] = quad;
        let prev = |x: usize| if x == 1 { n } else { x - 1 };
        let c_jk = t.connection_number(j, k - 1, l, prev(i)).unwrap();
        let c_ij = t.connection_number(i, j - 1, k, l - 1).unwrap();
        checks += 1;
        if (c_jk == 0) == (c_ij == 0) {
            failures.push(format!("exclusivity: n={n} t={t:?} quad={quad:?}"));
            continue;
        }
        let a = |x: usize, y: usize| t.a_degree(x, y).unwrap() as i64;
        let x = |p: usize, q: usize| t.x_degree(p, q).unwrap() as i64;
        let a_sums = [a(i, j) + a(k, l), a(i, k) + a(j, l), a(i, l) + a(j, k)];
        let x_sums = [x(i, j) + x(k, l), x(i, k) + x(j, l), x(i, l) + x(j, k)];
        checks += 2;
        let a_ok = if c_jk == 0 {
            a_sums[0] == a_sums[1] && a_sums[0] > a_sums[2]
        } else {
            a_sums[2] == a_sums[1] && a_sums[0] < a_sums[2]
        };
        // the X-side inequalities run the other way
        let x_ok = if c_jk == 0 {
            x_sums[0] == x_sums[1] && x_sums[0] < x_sums[2]
        } else {
            x_sums[2] == x_sums[1] && x_sums[0] > x_sums[2]
        };
        if !a_ok {
            failures.push(format!("a-trichotomy: n={n} t={t:?} quad={quad:?} sums={a_sums:?}"));
        }
        if !x_ok {
            failures.push(format!("x-trichotomy: n={n} t={t:?} quad={quad:?} sums={x_sums:?}"));
        }
    }
    SuiteOutcome { checks, failures }
}

/// The sector property at the last diagonal-free vertex: whenever
/// `(s-1, p)` is a diagonal for `s+1 < p <= n`, every `(s-1, q)` with
/// `s+2 <= q <= p-1` is one too.
pub fn sector_check(t: &Triangulation) -> Result<usize, String> {
    let n = t.n();
    let has_diagonal = |v: usize| {
        t.diagonals()
            .iter()
            .any(|d| d.endpoints().0 == v || d.endpoints().1 == v)
    };
    let Some(s) = (3..=n).rev().find(|&v| !has_diagonal(v)) else {
        return Ok(0); // hypothesis empty
    };
    let is_diag = |a: usize, b: usize| {
        pdgn::polygon::Diagonal::new(a, b, n)
            .map(|d| t.contains(&d))
            .unwrap_or(false)
    };
    let mut checks = 0;
    // the ear at s forces the diagonal (s-1, s+1)
    if s < n {
        checks += 1;
        if !is_diag(s - 1, s + 1) {
            return Err(format!("ear diagonal missing: t={t:?} s={s}"));
        }
    }
    for p in s + 2..=n {
        if is_diag(s - 1, p) {
            for q in s + 2..p {
                checks += 1;
                if !is_diag(s - 1, q) {
                    return Err(format!("sector gap: t={t:?} s={s} p={p} q={q}"));
                }
            }
        }
    }
    Ok(checks)
}

pub fn suite_sector(trials: usize, seed: u64) -> SuiteOutcome {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut checks = 0;
    let mut failures = Vec::new();
    for _ in 0..trials {
        let n = rng.gen_range(5..=10);
        let t = random_triangulation(n, &mut rng);
        checks += 1;
        if let Err(msg) = sector_check(&t) {
            failures.push(msg);
        }
    }
    SuiteOutcome { checks, failures }
}
