//! Finite groups, their character data, and surface-group homomorphism counts.
//!
//! Groups are stored as Cayley tables. Irreducible dimensions and
//! Frobenius–Schur indicators come from Dixon's method over a prime field
//! `F_p` with `p ≡ 1 (mod exponent)`: the class sums act on the centre of the
//! group algebra, their common eigenvectors are the central characters, and
//! both `d(V)` and `ν(V)` are small integers that lift uniquely from `F_p`.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::surface::{OrientationAssignment, Triangulation};
use crate::Limits;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("generated group exceeds the order cap of {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("unknown group `{0}`")]
    UnknownGroup(String),
    #[error("no admissible prime found below {bound}")]
    PrimeSearchFailed { bound: u64 },
    #[error("character computation failed at p = {prime}: {reason}")]
    DixonFailed { prime: u64, reason: String },
    #[error("work estimate {needed} exceeds the cap of {cap}")]
    WorkCapExceeded { needed: u128, cap: u64 },
    #[error("cannot read group table `{path}`: {message}")]
    Io { path: String, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    cayley: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    names: Vec<String>,
}

impl FiniteGroup {
    /// Validates a Cayley table. Associativity is checked exhaustively up to
    /// order 64 and on a fixed pseudo-random sample of triples above that.
    pub fn from_table(rows: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::InvalidTable("empty table".into()));
        }
        let mut cayley = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::InvalidTable(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            let mut seen = vec![false; n];
            for &x in row {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return Err(GroupError::InvalidTable(format!("row {i} is not a permutation of 0..{n}")));
                }
            }
            cayley.extend_from_slice(row);
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| cayley[e * n + x] == x && cayley[x * n + e] == x))
            .ok_or_else(|| GroupError::InvalidTable("no identity element".into()))?;
        let mut inverse = vec![usize::MAX; n];
        for (a, inv) in inverse.iter_mut().enumerate() {
            *inv = (0..n)
                .find(|&b| cayley[a * n + b] == identity && cayley[b * n + a] == identity)
                .ok_or_else(|| GroupError::InvalidTable(format!("element {a} has no two-sided inverse")))?;
        }
        let assoc = |a: usize, b: usize, c: usize| {
            cayley[cayley[a * n + b] * n + c] == cayley[a * n + cayley[b * n + c]]
        };
        if n <= 64 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(GroupError::InvalidTable(format!("not associative at ({a}, {b}, {c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            for _ in 0..200_000 {
                let mut r = || (rng.next_u64() % n as u64) as usize;
                let (a, b, c) = (r(), r(), r());
                if !assoc(a, b, c) {
                    return Err(GroupError::InvalidTable(format!("not associative at ({a}, {b}, {c})")));
                }
            }
        }
        let names = match names {
            Some(v) if v.len() == n => v,
            Some(v) => {
                return Err(GroupError::InvalidTable(format!("{} names for {n} elements", v.len())));
            }
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        Ok(FiniteGroup {
            order: n,
            cayley,
            identity,
            inverse,
            names,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).fold(1, |acc, g| acc.lcm(&self.element_order(g)))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (self.order, other.order);
        let rows = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        let names = (0..n * m)
            .map(|x| format!("({},{})", self.name(x / m), other.name(x % m)))
            .collect();
        FiniteGroup::from_table(rows, Some(names)).expect("direct product of groups is a group")
    }

    /// Serialized Cayley table: `grp-v1 <order>` followed by one row per element.
    pub fn to_table_text(&self) -> String {
        let mut out = format!("grp-v1 {}\n", self.order);
        for a in 0..self.order {
            let row: Vec<String> = (0..self.order).map(|b| self.mul(a, b).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_table_text(text: &str) -> Result<Self, GroupError> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| GroupError::InvalidTable("empty file".into()))?;
        let order: usize = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["grp-v1", n] => n
                .parse()
                .map_err(|_| GroupError::InvalidTable(format!("bad order `{n}`")))?,
            _ => return Err(GroupError::InvalidTable("expected `grp-v1 <order>` header".into())),
        };
        let rows = lines
            .map(|l| {
                l.split_whitespace()
                    .map(|t| t.parse().map_err(|_| GroupError::InvalidTable(format!("bad entry `{t}`"))))
                    .collect::<Result<Vec<usize>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        if rows.len() != order {
            return Err(GroupError::InvalidTable(format!("expected {order} rows, found {}", rows.len())));
        }
        FiniteGroup::from_table(rows, None)
    }
}

fn cycle_notation(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = perm[start];
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = perm[x];
        }
        let parts: Vec<String> = cycle.iter().map(|c| c.to_string()).collect();
        out.push_str(&format!("({})", parts.join(" ")));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

/// Closure of permutation generators by breadth-first multiplication.
///
/// Elements are numbered in discovery order starting from the identity, each
/// element multiplied on the right by the generators in the given order.
/// Products compose as functions: `(a·b)(x) = a(b(x))`.
pub fn group_from_permutations(
    degree: usize,
    generators: &[Vec<usize>],
    max_order: usize,
) -> Result<FiniteGroup, GroupError> {
    for g in generators {
        let mut seen = vec![false; degree];
        if g.len() != degree || g.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
            return Err(GroupError::InvalidPermutation(format!("{g:?} is not a bijection of 0..{degree}")));
        }
    }
    let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { b.iter().map(|&x| a[x]).collect() };
    let mut elements: Vec<Vec<usize>> = vec![(0..degree).collect()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(elements[0].clone(), 0)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in generators {
            let y = compose(&elements[i], g);
            if !index.contains_key(&y) {
                if elements.len() >= max_order {
                    return Err(GroupError::OrderCapExceeded { cap: max_order });
                }
                index.insert(y.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(y);
            }
        }
    }
    let rows = elements
        .iter()
        .map(|a| elements.iter().map(|b| index[&compose(a, b)]).collect())
        .collect();
    let names = elements.iter().map(|p| cycle_notation(p)).collect();
    FiniteGroup::from_table(rows, Some(names))
}

fn cyclic(n: usize) -> FiniteGroup {
    let rows = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    FiniteGroup::from_table(rows, None).expect("cyclic group table")
}

/// Dihedral group of order `2n`; element `i + n·j` is `r^i s^j`.
fn dihedral(n: usize) -> FiniteGroup {
    let elem = |i: usize, j: usize| i + n * j;
    let rows = (0..2 * n)
        .map(|x| {
            let (a, b) = (x % n, x / n);
            (0..2 * n)
                .map(|y| {
                    let (c, d) = (y % n, y / n);
                    let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
                    elem(rot, (b + d) % 2)
                })
                .collect()
        })
        .collect();
    let names = (0..2 * n)
        .map(|x| match (x % n, x / n) {
            (0, 0) => "e".to_string(),
            (i, 0) => format!("r{i}"),
            (0, _) => "s".to_string(),
            (i, _) => format!("r{i}s"),
        })
        .collect();
    FiniteGroup::from_table(rows, Some(names)).expect("dihedral group table")
}

/// Quaternion group; element `2u + s` is `(-1)^s` times unit `u ∈ {1, i, j, k}`.
fn quaternion() -> FiniteGroup {
    // Unit products u·v = sign · w.
    const UNITS: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let rows = (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (neg, w) = UNITS[x / 2][y / 2];
                    2 * w + ((x % 2) ^ (y % 2) ^ usize::from(neg))
                })
                .collect()
        })
        .collect();
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].map(String::from).to_vec();
    FiniteGroup::from_table(rows, Some(names)).expect("quaternion group table")
}

fn symmetric(n: usize, max_order: usize) -> Result<FiniteGroup, GroupError> {
    if n <= 1 {
        return Ok(cyclic(1));
    }
    let mut transposition: Vec<usize> = (0..n).collect();
    transposition.swap(0, 1);
    let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    group_from_permutations(n, &[transposition, cycle], max_order)
}

fn alternating(n: usize, max_order: usize) -> Result<FiniteGroup, GroupError> {
    if n <= 2 {
        return Ok(cyclic(1));
    }
    let gens: Vec<Vec<usize>> = (2..n)
        .map(|k| {
            let mut p: Vec<usize> = (0..n).collect();
            p[0] = 1;
            p[1] = k;
            p[k] = 0;
            p
        })
        .collect();
    group_from_permutations(n, &gens, max_order)
}

/// Named groups: `C<n>`, `D<n>` (order 2n), `S<n>`, `A<n>`, `Q8`, `prod(<a>,<b>)`.
pub fn catalog(name: &str) -> Result<FiniteGroup, GroupError> {
    parse_group_spec(name, &Limits::default())
}

/// Group spec strings: the catalog names plus `perm:<degree>:<cycles;...>`
/// and `table:<path>`.
pub fn parse_group_spec(spec: &str, limits: &Limits) -> Result<FiniteGroup, GroupError> {
    let spec = spec.trim();
    let unknown = || GroupError::UnknownGroup(spec.to_string());
    let check = |g: FiniteGroup| {
        if g.order() > limits.max_order {
            Err(GroupError::OrderCapExceeded { cap: limits.max_order })
        } else {
            Ok(g)
        }
    };
    if let Some(inner) = spec.strip_prefix("prod(").and_then(|s| s.strip_suffix(')')) {
        let (a, b) = split_top_level(inner).ok_or_else(unknown)?;
        let ga = parse_group_spec(a, limits)?;
        let gb = parse_group_spec(b, limits)?;
        if ga.order().saturating_mul(gb.order()) > limits.max_order {
            return Err(GroupError::OrderCapExceeded { cap: limits.max_order });
        }
        return Ok(ga.direct_product(&gb));
    }
    if let Some(rest) = spec.strip_prefix("perm:") {
        let (deg, cycles) = rest.split_once(':').unwrap_or((rest, ""));
        let degree: usize = deg.parse().map_err(|_| unknown())?;
        let gens = cycles
            .split(';')
            .filter(|s| !s.trim().is_empty())
            .map(|s| parse_cycles(s, degree))
            .collect::<Result<Vec<_>, _>>()?;
        return group_from_permutations(degree, &gens, limits.max_order);
    }
    if let Some(path) = spec.strip_prefix("table:") {
        let text = std::fs::read_to_string(path).map_err(|e| GroupError::Io {
            path: path.to_string(),
            message: e.to_string(),
        })?;
        return check(FiniteGroup::from_table_text(&text)?);
    }
    if spec == "Q8" {
        return Ok(quaternion());
    }
    let (kind, n) = spec.split_at(spec.find(|c: char| c.is_ascii_digit()).ok_or_else(unknown)?);
    let n: usize = n.parse().map_err(|_| unknown())?;
    if n == 0 {
        return Err(unknown());
    }
    match kind {
        "C" if n <= limits.max_order => Ok(cyclic(n)),
        "D" if 2 * n <= limits.max_order => Ok(dihedral(n)),
        "C" | "D" => Err(GroupError::OrderCapExceeded { cap: limits.max_order }),
        "S" => symmetric(n, limits.max_order),
        "A" => alternating(n, limits.max_order),
        _ => Err(unknown()),
    }
}

/// Splits `a,b` at the single comma outside parentheses.
pub(crate) fn split_top_level(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    let mut split = None;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                if split.is_some() {
                    return None;
                }
                split = Some(i);
            }
            _ => {}
        }
        if depth < 0 {
            return None;
        }
    }
    let i = split?;
    (depth == 0).then(|| (s[..i].trim(), s[i + 1..].trim()))
}

/// `(0 1 2)(3 4)` in one-line form on `0..degree`. Cycles act right to left.
fn parse_cycles(s: &str, degree: usize) -> Result<Vec<usize>, GroupError> {
    let bad = || GroupError::InvalidPermutation(s.to_string());
    let mut perm: Vec<usize> = (0..degree).collect();
    for chunk in s.split(')') {
        let chunk = chunk.trim();
        if chunk.is_empty() {
            continue;
        }
        let body = chunk.strip_prefix('(').ok_or_else(bad)?;
        let points = body
            .split([' ', ','])
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        if points.iter().any(|&p| p >= degree) {
            return Err(bad());
        }
        let mut cycle: Vec<usize> = (0..degree).collect();
        for (i, &p) in points.iter().enumerate() {
            if cycle[p] != p {
                return Err(bad());
            }
            cycle[p] = points[(i + 1) % points.len()];
        }
        perm = perm.iter().map(|&x| cycle[x]).collect();
    }
    Ok(perm)
}

/// Conjugacy classes as sorted element lists: the identity's class first,
/// the rest ordered by smallest element.
pub fn conjugacy_classes(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let starts = std::iter::once(g.identity()).chain((0..n).filter(|&x| x != g.identity()));
    for x in starts {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut class: Vec<usize> = (0..n).map(|h| g.mul(g.mul(h, x), g.inv(h))).collect();
        class.sort_unstable();
        class.dedup();
        for &y in &class {
            class_of[y] = id;
        }
        classes.push(class);
    }
    classes
}

/// Irreducible dimensions with Frobenius–Schur indicators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrrepData {
    entries: Vec<(usize, i8)>,
    class_count: usize,
}

impl IrrepData {
    /// Entries `(d, ν)`, sorted descending.
    pub fn entries(&self) -> &[(usize, i8)] {
        &self.entries
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn isqrt(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

const PRIME_SEARCH_BOUND: u64 = 1 << 31;

/// Primes `p ≡ 1 (mod exponent)` with `p > 2⌊√|G|⌋` and `p > 3`, ascending.
pub fn admissible_primes(g: &FiniteGroup) -> impl Iterator<Item = u64> {
    let e = g.exponent() as u64;
    let floor = (2 * isqrt(g.order()) as u64).max(3);
    (1..)
        .map(move |m| m * e + 1)
        .take_while(|&p| p < PRIME_SEARCH_BOUND)
        .filter(move |&p| p > floor && is_prime(p))
}

/// Character data from the smallest admissible prime.
pub fn irrep_data(g: &FiniteGroup) -> Result<IrrepData, GroupError> {
    let p = admissible_primes(g)
        .next()
        .ok_or(GroupError::PrimeSearchFailed { bound: PRIME_SEARCH_BOUND })?;
    irrep_data_with_prime(g, p)
}

/// Dixon's method at a given admissible prime.
pub fn irrep_data_with_prime(g: &FiniteGroup, p: u64) -> Result<IrrepData, GroupError> {
    let fail = |reason: String| GroupError::DixonFailed { prime: p, reason };
    let n = g.order();
    let e = g.exponent() as u64;
    if !is_prime(p) || !(p - 1).is_multiple_of(e) || p <= (2 * isqrt(n) as u64).max(3) {
        return Err(fail("prime is not admissible for this group".into()));
    }
    let classes = conjugacy_classes(g);
    let r = classes.len();
    let mut class_of = vec![0usize; n];
    for (k, c) in classes.iter().enumerate() {
        for &x in c {
            class_of[x] = k;
        }
    }
    let reps: Vec<usize> = classes.iter().map(|c| c[0]).collect();
    let sizes: Vec<u64> = classes.iter().map(|c| c.len() as u64).collect();

    // a[i][j][k] = #{x ∈ C_i : x⁻¹ z_k ∈ C_j}, so C_i C_j = Σ_k a[i][j][k] C_k.
    let mut coeff = vec![0u64; r * r * r];
    for (i, class) in classes.iter().enumerate() {
        for &x in class {
            let xi = g.inv(x);
            for (k, &z) in reps.iter().enumerate() {
                let j = class_of[g.mul(xi, z)];
                coeff[(i * r + j) * r + k] += 1;
            }
        }
    }

    // Common eigenspaces of the class-sum matrices (M_i)_{jk} = a[i][j][k].
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r).map(|i| unit_vec(r, i)).collect()];
    for i in 1..r {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let m: Vec<u64> = (0..r * r).map(|jk| coeff[i * r * r + jk] % p).collect();
        let mut next = Vec::new();
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            let mut found = 0;
            for lambda in 0..p {
                let pieces = eigen_subspace(&m, r, &space, lambda, p);
                if !pieces.is_empty() {
                    found += pieces.len();
                    next.push(pieces);
                }
                if found == space.len() {
                    break;
                }
            }
            if found != space.len() {
                return Err(fail("class-sum matrix is not diagonalizable over F_p".into()));
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(fail("common eigenspaces are not one-dimensional".into()));
    }

    let inv_class: Vec<usize> = reps.iter().map(|&z| class_of[g.inv(z)]).collect();
    let sq_class: Vec<usize> = reps.iter().map(|&z| class_of[g.mul(z, z)]).collect();
    let n_mod = n as u64 % p;
    let bound = isqrt(n);
    let mut entries = Vec::with_capacity(r);
    for space in spaces {
        let w = &space[0];
        if w[0] == 0 {
            return Err(fail("central character vanishes on the identity".into()));
        }
        let scale = inv_mod(w[0], p);
        let w: Vec<u64> = w.iter().map(|x| x * scale % p).collect();
        // d² = |G| / Σ_k ω_k ω_{k⁻¹} / h_k
        let s = (0..r).fold(0, |acc, k| (acc + w[k] * w[inv_class[k]] % p * inv_mod(sizes[k] % p, p)) % p);
        if s == 0 {
            return Err(fail("degenerate norm for a central character".into()));
        }
        let d_sq = n_mod * inv_mod(s, p) % p;
        let d = (1..=bound)
            .find(|&d| (d * d) as u64 % p == d_sq)
            .ok_or_else(|| fail("degree does not lift to an integer".into()))?;
        let chi: Vec<u64> = (0..r)
            .map(|k| d as u64 % p * w[k] % p * inv_mod(sizes[k] % p, p) % p)
            .collect();
        let nu = (0..r).fold(0, |acc, k| (acc + sizes[k] % p * chi[sq_class[k]]) % p) * inv_mod(n_mod, p) % p;
        let fs = match nu {
            0 => 0,
            1 => 1,
            x if x == p - 1 => -1,
            _ => return Err(fail(format!("indicator {nu} is not in {{-1, 0, 1}}"))),
        };
        entries.push((d, fs));
    }
    entries.sort_unstable_by(|a, b| b.cmp(a));

    let total: usize = entries.iter().map(|(d, _)| d * d).sum();
    if total != n {
        return Err(fail(format!("sum of squared degrees is {total}, expected {n}")));
    }
    if entries.iter().any(|&(d, fs)| fs == -1 && d % 2 != 0) {
        return Err(fail("quaternionic irrep of odd degree".into()));
    }
    Ok(IrrepData {
        entries,
        class_count: r,
    })
}

fn unit_vec(r: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; r];
    v[i] = 1;
    v
}

/// Basis of `{ w ∈ span(space) : M w = λ w }` over `F_p`.
fn eigen_subspace(m: &[u64], r: usize, space: &[Vec<u64>], lambda: u64, p: u64) -> Vec<Vec<u64>> {
    // Columns: (M - λ) b for each basis vector b; the kernel gives combinations.
    let cols: Vec<Vec<u64>> = space
        .iter()
        .map(|b| {
            (0..r)
                .map(|j| {
                    let mv = (0..r).fold(0, |acc, k| (acc + m[j * r + k] * b[k]) % p);
                    (mv + (p - lambda) * b[j]) % p
                })
                .collect()
        })
        .collect();
    let rows: Vec<Vec<u64>> = (0..r).map(|j| cols.iter().map(|c| c[j]).collect()).collect();
    nullspace_mod(rows, space.len(), p)
        .into_iter()
        .map(|c| {
            (0..r)
                .map(|k| space.iter().zip(&c).fold(0, |acc, (b, ck)| (acc + b[k] * ck) % p))
                .collect()
        })
        .collect()
}

/// Kernel of a matrix with `cols` columns over `F_p`.
fn nullspace_mod(mut rows: Vec<Vec<u64>>, cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pr) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = inv_mod(rows[rank][col], p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i != rank && rows[i][col] != 0 {
                let f = rows[i][col];
                let pivot = rows[rank].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0; cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - rows[i][free]) % p;
            }
            v
        })
        .collect()
}

/// `counts[x]` tuples, one layer at a time: the number of `layers`-fold
/// products of independent factors distributed as `factor`, equal to `e`.
fn count_products(g: &FiniteGroup, factor: &[u64], layers: usize) -> BigUint {
    let n = g.order();
    let factor: Vec<BigUint> = factor.iter().map(|&c| BigUint::from(c)).collect();
    let mut dist = vec![BigUint::zero(); n];
    dist[g.identity()] = BigUint::one();
    for _ in 0..layers {
        let mut next = vec![BigUint::zero(); n];
        for (x, dx) in dist.iter().enumerate().filter(|(_, d)| !d.is_zero()) {
            for (y, fy) in factor.iter().enumerate().filter(|(_, f)| !f.is_zero()) {
                next[g.mul(x, y)] += dx * fy;
            }
        }
        dist = next;
    }
    dist.swap_remove(g.identity())
}

fn check_work(needed: u128, limits: &Limits) -> Result<(), GroupError> {
    if needed > limits.max_work as u128 {
        Err(GroupError::WorkCapExceeded {
            needed,
            cap: limits.max_work,
        })
    } else {
        Ok(())
    }
}

/// `#Hom(π₁(Σ_g), G)`: the number of `2g`-tuples with `Π [a_i, b_i] = e`.
///
/// Enumerates all pairs once to tabulate commutators, then chains the `g`
/// factors by prefix product. Work is `(g + 1)·|G|²` relator steps.
pub fn hom_count_orientable(g: &FiniteGroup, genus: usize, limits: &Limits) -> Result<BigUint, GroupError> {
    if genus == 0 {
        return Ok(BigUint::one());
    }
    let n = g.order() as u128;
    check_work((genus as u128 + 1) * n * n, limits)?;
    let commutators = (0..g.order())
        .into_par_iter()
        .map(|a| {
            let mut local = vec![0u64; g.order()];
            let ai = g.inv(a);
            for b in 0..g.order() {
                let c = g.mul(g.mul(a, b), g.mul(ai, g.inv(b)));
                local[c] += 1;
            }
            local
        })
        .reduce(
            || vec![0u64; g.order()],
            |mut acc, v| {
                acc.iter_mut().zip(v).for_each(|(x, y)| *x += y);
                acc
            },
        );
    Ok(count_products(g, &commutators, genus))
}

/// `#Hom(π₁(N_k), G)`: the number of `k`-tuples with `a_1² ⋯ a_k² = e`.
pub fn hom_count_nonorientable(g: &FiniteGroup, crosscaps: usize, limits: &Limits) -> Result<BigUint, GroupError> {
    let n = g.order() as u128;
    check_work(n + crosscaps as u128 * n * n, limits)?;
    let mut squares = vec![0u64; g.order()];
    for a in 0..g.order() {
        squares[g.mul(a, a)] += 1;
    }
    Ok(count_products(g, &squares, crosscaps))
}

/// Number of consistent labelings of the flags of `t` by elements of `g`.
///
/// Each flag carries the element read along its triangle's assigned
/// orientation. Flags at an edge whose triangles agree carry inverse
/// elements, otherwise equal ones; the product around every triangle is `e`.
/// Depth-first search over edge labels; a triangle with a single unknown
/// edge fixes that edge. Every search node counts against `max_work`.
pub fn labeling_count(
    g: &FiniteGroup,
    t: &Triangulation,
    assignment: &OrientationAssignment,
    limits: &Limits,
) -> Result<u64, GroupError> {
    let edges = t.edges();
    let side_edge = t.side_edges();
    // For each side: (edge, label = x_e or x_e⁻¹).
    let mut flag_rel = vec![(0usize, false); 3 * t.face_count()];
    for (e, edge) in edges.iter().enumerate() {
        flag_rel[edge.first.index()] = (e, false);
        let agree = assignment.classify(edge) == crate::surface::EdgeKind::Agree;
        flag_rel[edge.second.index()] = (e, agree);
    }
    let triangles: Vec<[usize; 3]> = (0..t.face_count())
        .map(|f| {
            if assignment.sign(f) > 0 {
                [3 * f, 3 * f + 1, 3 * f + 2]
            } else {
                [3 * f + 2, 3 * f + 1, 3 * f]
            }
        })
        .collect();
    let mut tris_of_edge = vec![Vec::new(); edges.len()];
    for (f, _) in triangles.iter().enumerate() {
        for s in 0..3 {
            tris_of_edge[side_edge[3 * f + s]].push(f);
        }
    }
    let mut search = LabelSearch {
        g,
        flag_rel,
        triangles,
        tris_of_edge,
        values: vec![None; edges.len()],
        trail: Vec::new(),
        nodes: 0,
        cap: limits.max_work,
    };
    search.count()
}

struct LabelSearch<'a> {
    g: &'a FiniteGroup,
    flag_rel: Vec<(usize, bool)>,
    triangles: Vec<[usize; 3]>,
    tris_of_edge: Vec<Vec<usize>>,
    values: Vec<Option<usize>>,
    trail: Vec<usize>,
    nodes: u64,
    cap: u64,
}

impl LabelSearch<'_> {
    fn flag_value(&self, flag: usize) -> Option<usize> {
        let (e, inverted) = self.flag_rel[flag];
        self.values[e].map(|x| if inverted { self.g.inv(x) } else { x })
    }

    fn assign(&mut self, e: usize, x: usize) {
        self.values[e] = Some(x);
        self.trail.push(e);
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let e = self.trail.pop().unwrap();
            self.values[e] = None;
        }
    }

    /// Checks and extends the assignment from the triangles at the given
    /// edges; `false` on a violated triangle.
    fn propagate(&mut self, mut pending: Vec<usize>) -> bool {
        while let Some(e) = pending.pop() {
            for ti in 0..self.tris_of_edge[e].len() {
                let flags = self.triangles[self.tris_of_edge[e][ti]];
                let vals = flags.map(|f| self.flag_value(f));
                match vals.iter().filter(|v| v.is_none()).count() {
                    0 => {
                        let (a, b, c) = (vals[0].unwrap(), vals[1].unwrap(), vals[2].unwrap());
                        if self.g.mul(self.g.mul(a, b), c) != self.g.identity() {
                            return false;
                        }
                    }
                    1 => {
                        let pos = vals.iter().position(Option::is_none).unwrap();
                        let v = |i: usize| vals[i].unwrap();
                        let g = self.g;
                        let label = match pos {
                            0 => g.inv(g.mul(v(1), v(2))),
                            1 => g.mul(g.inv(v(0)), g.inv(v(2))),
                            _ => g.inv(g.mul(v(0), v(1))),
                        };
                        let (edge, inverted) = self.flag_rel[flags[pos]];
                        self.assign(edge, if inverted { g.inv(label) } else { label });
                        pending.push(edge);
                    }
                    _ => {}
                }
            }
        }
        true
    }

    fn count(&mut self) -> Result<u64, GroupError> {
        self.nodes += 1;
        if self.nodes > self.cap {
            return Err(GroupError::WorkCapExceeded {
                needed: self.nodes as u128,
                cap: self.cap,
            });
        }
        let Some(e) = self.values.iter().position(Option::is_none) else {
            return Ok(1);
        };
        let mut total = 0;
        for x in 0..self.g.order() {
            let mark = self.trail.len();
            self.assign(e, x);
            if self.propagate(vec![e]) {
                total += self.count()?;
            }
            self.undo(mark);
        }
        Ok(total)
    }
}
