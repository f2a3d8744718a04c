#![allow(dead_code)]

use bcn_entropy::generate::random_network;
use bcn_entropy::{Assignment, BoolMatrix, Formula, NetworkDef};
use num_bigint::BigUint;
use std::collections::HashMap;

/// Seeded corpus of random networks: `count` nets cycling through
/// `n = 1..=n_max` and every `m <= n`.
pub fn corpus(count: usize, n_max: usize, m_max: usize, seed_base: u64) -> Vec<NetworkDef> {
    (0..count)
        .map(|i| {
            let n = 1 + i % n_max;
            let m = (i / n_max) % (n.min(m_max) + 1);
            random_network(n, m, seed_base + i as u64).expect("valid corpus dimensions")
        })
        .collect()
}

/// Period of the strongly connected component `comp` (0-based vertices):
/// the gcd of cycle lengths through it.
pub fn period(m: &BoolMatrix, comp: &[usize]) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    let inside = |v: usize| comp.binary_search(&v).is_ok();
    let mut level = vec![usize::MAX; m.rows()];
    level[comp[0]] = 0;
    let mut queue = std::collections::VecDeque::from([comp[0]]);
    let mut g = 0;
    while let Some(u) = queue.pop_front() {
        for w in m.column_ones(u).filter(|&w| inside(w)) {
            if level[w] == usize::MAX {
                level[w] = level[u] + 1;
                queue.push_back(w);
            } else {
                g = gcd(g, (level[u] + 1).abs_diff(level[w]));
            }
        }
    }
    g
}

/// Spectral radius from a dense Schur decomposition; independent of the
/// SCC/power-iteration path. `None` when the QR iteration does not settle.
pub fn dense_spectral_radius(m: &BoolMatrix) -> Option<f64> {
    let k = m.rows();
    let dense = nalgebra::DMatrix::from_fn(k, k, |i, j| if m.get(i, j) { 1.0 } else { 0.0 });
    let schur = dense.try_schur(1e-14, 100_000)?;
    Some(
        schur
            .complex_eigenvalues()
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max),
    )
}

/// Bits of a 1-based canonical index over `k` variables; TRUE-first.
pub fn bits_of(index: usize, k: usize) -> Vec<bool> {
    (0..k)
        .map(|i| (index - 1) >> (k - 1 - i) & 1 == 0)
        .collect()
}

pub fn index_of(bits: &[bool]) -> usize {
    1 + bits.iter().fold(0, |acc, &b| acc << 1 | usize::from(!b))
}

/// Plain recursive evaluation; deliberately separate from `Formula::eval`.
pub fn eval_with(f: &Formula, values: &HashMap<&str, bool>) -> bool {
    match f {
        Formula::Const(b) => *b,
        Formula::Var(name) => values[name.as_str()],
        Formula::Not(x) => !eval_with(x, values),
        Formula::And(l, r) => eval_with(l, values) && eval_with(r, values),
        Formula::Or(l, r) => eval_with(l, values) || eval_with(r, values),
    }
}

/// Transition matrix column sequence by direct formula evaluation.
pub fn simulate_l(net: &NetworkDef) -> Vec<usize> {
    let (n, m) = (net.n(), net.m());
    let mut cols = Vec::with_capacity(1 << (n + m));
    for iu in 1..=1usize << m {
        for ix in 1..=1usize << n {
            let values: HashMap<&str, bool> = net
                .input_names()
                .iter()
                .map(String::as_str)
                .zip(bits_of(iu, m))
                .chain(
                    net.state_names()
                        .iter()
                        .map(String::as_str)
                        .zip(bits_of(ix, n)),
                )
                .collect();
            let next: Vec<bool> = net
                .updates()
                .iter()
                .map(|f| eval_with(f, &values))
                .collect();
            cols.push(index_of(&next));
        }
    }
    cols
}

/// Merged matrix from a column sequence.
pub fn merged_from_l(cols: &[usize], n: usize) -> BoolMatrix {
    let states = 1 << n;
    let mut out = BoolMatrix::zeros(states, states);
    for (c, &t) in cols.iter().enumerate() {
        out.set(t - 1, c % states, true);
    }
    out
}

/// Union of all closed sets with column sum `v`, by checking every subset.
pub fn closed_set_by_subsets(m: &BoolMatrix, v: usize) -> Vec<usize> {
    let k = m.rows();
    assert!(k <= 16);
    let mut union = 0u32;
    for s in 1u32..1 << k {
        let ok = (0..k).filter(|&j| s >> j & 1 == 1).all(|j| {
            (0..k).filter(|&i| m.get(i, j)).count() == v
                && (0..k).all(|i| !m.get(i, j) || s >> i & 1 == 1)
        });
        if ok {
            union |= s;
        }
    }
    (0..k)
        .filter(|&j| union >> j & 1 == 1)
        .map(|j| j + 1)
        .collect()
}

/// Sum of the entries of `M^(j-1)` by repeated dense multiplication.
pub fn walks_by_matrix_power(m: &BoolMatrix, j: usize) -> BigUint {
    let k = m.rows();
    let mut p: Vec<Vec<BigUint>> = (0..k)
        .map(|i| (0..k).map(|c| BigUint::from(u8::from(i == c))).collect())
        .collect();
    for _ in 1..j {
        p = (0..k)
            .map(|i| {
                (0..k)
                    .map(|c| (0..k).filter(|&l| m.get(i, l)).map(|l| &p[l][c]).sum())
                    .collect()
            })
            .collect();
    }
    p.iter().flatten().sum()
}

/// First satisfying assignment by exhaustive evaluation, or `None`.
pub fn brute_sat(f: &Formula, vars: &[String]) -> Option<Vec<bool>> {
    (1..=1usize << vars.len())
        .map(|r| bits_of(r, vars.len()))
        .find(|bits| {
            let a: Assignment = vars.iter().cloned().zip(bits.iter().copied()).collect();
            f.eval(&a).unwrap()
        })
}

/// Column sums of `m` computed entrywise.
pub fn column_sums(m: &BoolMatrix) -> Vec<usize> {
    (0..m.cols())
        .map(|j| (0..m.rows()).filter(|&i| m.get(i, j)).count())
        .collect()
}
