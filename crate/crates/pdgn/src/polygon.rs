//! Triangulations of the labelled n-gon: cyclic intervals, connection
//! numbers, A- and X-degrees, diagonal flips and exhaustive enumeration.
//!
//! Vertex labels are 1-based and run counterclockwise around the polygon.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A cyclic interval of polygon vertices. `[i, i]` is the singleton `{i}`;
/// for `i < j` the interval is `{i, ..., j}`, otherwise it wraps through `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CyclicInterval {
    pub start: usize,
    pub end: usize,
    pub n: usize,
}

impl CyclicInterval {
    pub fn new(start: usize, end: usize, n: usize) -> Result<Self> {
        if start < 1 || start > n || end < 1 || end > n {
            return Err(Error::InvalidInput(format!(
                "interval [{start},{end}] out of range 1..{n}"
            )));
        }
        Ok(Self { start, end, n })
    }

    pub fn contains(&self, x: usize) -> bool {
        if x < 1 || x > self.n {
            return false;
        }
        if self.start <= self.end {
            self.start <= x && x <= self.end
        } else {
            x >= self.start || x <= self.end
        }
    }

    pub fn len(&self) -> usize {
        if self.start <= self.end {
            self.end - self.start + 1
        } else {
            self.n - self.start + 1 + self.end
        }
    }

    pub fn is_empty(&self) -> bool {
        false // an interval always holds at least its start
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).map(move |d| (self.start - 1 + d) % self.n + 1)
    }
}

/// A polygon diagonal, stored as a normalized pair `(a, b)` with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diagonal {
    a: usize,
    b: usize,
}

impl Diagonal {
    pub fn new(x: usize, y: usize, n: usize) -> Result<Self> {
        if x < 1 || x > n || y < 1 || y > n || x == y {
            return Err(Error::InvalidInput(format!(
                "bad diagonal endpoints ({x},{y}) for n={n}"
            )));
        }
        let (a, b) = if x < y { (x, y) } else { (y, x) };
        if b - a == 1 || (a == 1 && b == n) {
            return Err(Error::InvalidInput(format!(
                "({a},{b}) is a polygon side, not a diagonal"
            )));
        }
        Ok(Self { a, b })
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.a, self.b)
    }

    /// Strict interleaving of endpoints in cyclic order.
    pub fn crosses(&self, other: &Diagonal) -> bool {
        let (a, b) = (self.a, self.b);
        let (c, d) = (other.a, other.b);
        if a == c || a == d || b == c || b == d {
            return false;
        }
        let inside = |x: usize| a < x && x < b;
        inside(c) != inside(d)
    }
}

/// A triangulation of the labelled n-gon, held as its diagonal set. The
/// polygon sides are implicit and never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triangulation {
    n: usize,
    diagonals: Vec<Diagonal>, // sorted
}

#[derive(Serialize, Deserialize)]
struct TriangulationJson {
    n: usize,
    diagonals: Vec<[usize; 2]>,
}

impl Triangulation {
    pub fn new<I>(n: usize, diagonals: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n < 4 {
            return Err(Error::InvalidInput(format!("polygon size {n} < 4")));
        }
        let mut diags: Vec<Diagonal> = diagonals
            .into_iter()
            .map(|(x, y)| Diagonal::new(x, y, n))
            .collect::<Result<_>>()?;
        diags.sort();
        diags.dedup();
        if diags.len() != n - 3 {
            return Err(Error::InvalidInput(format!(
                "expected {} diagonals, got {}",
                n - 3,
                diags.len()
            )));
        }
        for i in 0..diags.len() {
            for j in i + 1..diags.len() {
                if diags[i].crosses(&diags[j]) {
                    return Err(Error::InvalidInput(format!(
                        "diagonals {:?} and {:?} cross",
                        diags[i].endpoints(),
                        diags[j].endpoints()
                    )));
                }
            }
        }
        Ok(Self { n, diagonals: diags })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diagonals(&self) -> &[Diagonal] {
        &self.diagonals
    }

    pub fn contains(&self, d: &Diagonal) -> bool {
        self.diagonals.binary_search(d).is_ok()
    }

    /// Whether `(x, y)` is a side or a diagonal of the triangulation.
    pub fn is_edge(&self, x: usize, y: usize) -> bool {
        let (a, b) = if x < y { (x, y) } else { (y, x) };
        if b - a == 1 || (a == 1 && b == self.n) {
            return true;
        }
        Diagonal::new(a, b, self.n)
            .map(|d| self.contains(&d))
            .unwrap_or(false)
    }

    /// The triangles of the triangulation as sorted vertex triples, in
    /// lexicographic order. A triple is a triangle exactly when its three
    /// sides are all edges or diagonals.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::with_capacity(self.n - 2);
        for a in 1..=self.n {
            for b in a + 1..=self.n {
                if !self.is_edge(a, b) {
                    continue;
                }
                for c in b + 1..=self.n {
                    if self.is_edge(b, c) && self.is_edge(a, c) {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        debug_assert_eq!(out.len(), self.n - 2);
        out
    }

    /// Counts the diagonals connecting the two cyclic intervals; a diagonal
    /// is counted once even when it connects them in both readings.
    pub fn connection_number(&self, p: usize, q: usize, s: usize, t: usize) -> Result<usize> {
        connection_number_raw(self.n, &self.diagonals, p, q, s, t)
    }

    /// Number of diagonals with exactly one endpoint in `[i, j-1]`.
    pub fn a_degree(&self, i: usize, j: usize) -> Result<usize> {
        if !(1 <= i && i < j && j <= self.n) {
            return Err(Error::InvalidInput(format!("need 1 <= i < j <= n, got ({i},{j})")));
        }
        let iv = CyclicInterval::new(i, j - 1, self.n)?;
        let count = self
            .diagonals
            .iter()
            .filter(|d| {
                let (a, b) = d.endpoints();
                iv.contains(a) != iv.contains(b)
            })
            .count();
        // Same count as the connection number of [i, j-1] with its complement.
        debug_assert_eq!(
            count,
            self.connection_number(i, j - 1, j, (i + self.n - 2) % self.n + 1)
                .unwrap()
        );
        Ok(count)
    }

    /// The X-degree, by its four defining connection-number cases.
    pub fn x_degree(&self, i: usize, j: usize) -> Result<usize> {
        if !(1 <= i && i < j && j <= self.n) {
            return Err(Error::InvalidInput(format!("need 1 <= i < j <= n, got ({i},{j})")));
        }
        let c = |p, q, s, t| self.connection_number(p, q, s, t).unwrap();
        Ok(match (i, j) {
            (1, 2) => 0,
            (1, j) => c(j, 1, j, 1) + c(1, 1, 2, j - 1),
            (2, j) => c(j, 1, j, 1),
            (i, j) => c(i, 1, i, 1) + c(j, i - 1, j, 1),
        })
    }

    /// Replaces `d` by the opposite diagonal of the quadrilateral formed by
    /// its two adjacent triangles.
    pub fn flip(&self, d: &Diagonal) -> Result<Triangulation> {
        if !self.contains(d) {
            return Err(Error::InvalidInput(format!(
                "diagonal {:?} not in the triangulation",
                d.endpoints()
            )));
        }
        let (a, b) = d.endpoints();
        let apexes: Vec<usize> = self
            .triangles()
            .into_iter()
            .filter(|t| t.contains(&a) && t.contains(&b))
            .map(|t| *t.iter().find(|&&v| v != a && v != b).unwrap())
            .collect();
        debug_assert_eq!(apexes.len(), 2);
        let mut diags: Vec<(usize, usize)> = self
            .diagonals
            .iter()
            .filter(|x| *x != d)
            .map(|x| x.endpoints())
            .collect();
        diags.push((apexes[0], apexes[1]));
        Triangulation::new(self.n, diags)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "diagonals": self.diagonals.iter().map(|d| [d.a, d.b]).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let parsed: TriangulationJson = serde_json::from_value(v.clone())
            .map_err(|e| Error::InvalidInput(format!("bad triangulation JSON: {e}")))?;
        Triangulation::new(parsed.n, parsed.diagonals.iter().map(|d| (d[0], d[1])))
    }
}

/// Connection number over a raw diagonal list (the list need not form a
/// full triangulation).
pub fn connection_number_raw(
    n: usize,
    diagonals: &[Diagonal],
    p: usize,
    q: usize,
    s: usize,
    t: usize,
) -> Result<usize> {
    let first = CyclicInterval::new(p, q, n)?;
    let second = CyclicInterval::new(s, t, n)?;
    Ok(diagonals
        .iter()
        .filter(|d| {
            let (a, b) = d.endpoints();
            (first.contains(a) && second.contains(b)) || (first.contains(b) && second.contains(a))
        })
        .count())
}

/// All triangulations of the labelled n-gon, each exactly once, sorted by
/// their diagonal lists.
pub fn enumerate_triangulations(n: usize) -> Result<Vec<Triangulation>> {
    if n < 4 {
        return Err(Error::InvalidInput(format!("polygon size {n} < 4")));
    }
    let mut diag_sets = Vec::new();
    let mut current = Vec::new();
    fill_region(1, n, &mut current, &mut diag_sets);
    let mut out: Vec<Triangulation> = diag_sets
        .into_iter()
        .map(|ds| Triangulation::new(n, ds).expect("enumeration produced a valid triangulation"))
        .collect();
    out.sort_by(|x, y| x.diagonals.cmp(&y.diagonals));
    Ok(out)
}

/// Triangulates the sub-polygon on the consecutive vertices `lo..=hi` by
/// choosing the apex of the triangle that sits on the chord `(lo, hi)`.
fn fill_region(lo: usize, hi: usize, current: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
    if hi - lo < 2 {
        out.push(current.clone());
        return;
    }
    for apex in lo + 1..hi {
        let mut added = 0;
        if apex - lo >= 2 {
            current.push((lo, apex));
            added += 1;
        }
        if hi - apex >= 2 {
            current.push((apex, hi));
            added += 1;
        }
        // Re-curse on both sides of the triangle (lo, apex, hi); the chords
        // just pushed act as the closing edges of the sub-regions.
        fill_region_pair(lo, apex, hi, current, out);
        for _ in 0..added {
            current.pop();
        }
    }
}

fn fill_region_pair(
    lo: usize,
    apex: usize,
    hi: usize,
    current: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    // Enumerate the cartesian product of the two sub-regions.
    let mut left = Vec::new();
    let mut scratch = Vec::new();
    fill_region(lo, apex, &mut scratch, &mut left);
    for l in left {
        let mark = current.len();
        current.extend(l.iter().copied());
        fill_region(apex, hi, current, out);
        current.truncate(mark);
    }
}

/// The fan of diagonals from a single apex vertex.
pub fn palm_triangulation(n: usize, v: usize) -> Result<Triangulation> {
    if n < 4 {
        return Err(Error::InvalidInput(format!("polygon size {n} < 4")));
    }
    if v < 1 || v > n {
        return Err(Error::InvalidInput(format!("apex {v} out of range 1..{n}")));
    }
    let diags = (2..=n - 2).map(|d| (v, (v - 1 + d) % n + 1));
    Triangulation::new(n, diags)
}
