//! Direct enumeration of every structure of a family on `[n]`, tallying the
//! fixed-point label sum. Used only as an oracle for the exact profile.

use crate::families::FamilyId;

/// Tally of fixed-point label sums, indexed `0..=n(n+1)/2`.
pub(crate) fn label_sum_tally(family: FamilyId, n: usize) -> Vec<u64> {
    let mut tally = vec![0u64; n * (n + 1) / 2 + 1];
    let mut record = |fixed: &mut dyn Iterator<Item = usize>| {
        let sum: usize = fixed.map(|i| i + 1).sum();
        tally[sum] += 1;
    };
    match family {
        FamilyId::Permutations => for_each_permutation(n, |p| record(&mut fixed_points(p))),
        FamilyId::Involutions => for_each_permutation(n, |p| {
            if (0..n).all(|i| p[p[i]] == i) {
                record(&mut fixed_points(p));
            }
        }),
        FamilyId::OddCyclePermutations => for_each_permutation(n, |p| {
            if cycle_lengths(p).iter().all(|len| len % 2 == 1) {
                record(&mut fixed_points(p));
            }
        }),
        FamilyId::OddCycleCountPermutations => for_each_permutation(n, |p| {
            if cycle_lengths(p).len() % 2 == 1 {
                record(&mut fixed_points(p));
            }
        }),
        FamilyId::AllFunctions => for_each_word(n, n, |f| {
            record(&mut (0..n).filter(|&i| f[i] == i));
        }),
        FamilyId::PartialFunctions => {
            // letter n stands for "undefined"
            for_each_word(n, n + 1, |f| {
                record(&mut (0..n).filter(|&i| f[i] == i || f[i] == n));
            })
        }
        FamilyId::SetPartitions => for_each_set_partition(n, |blocks| {
            let mut sizes = vec![0usize; n];
            for &b in blocks {
                sizes[b] += 1;
            }
            record(&mut (0..n).filter(|&i| sizes[blocks[i]] == 1));
        }),
        FamilyId::RootedForests => {
            // parent n marks a root
            for_each_word(n, n + 1, |parent| {
                if !parents_acyclic(parent) {
                    return;
                }
                let mut has_child = vec![false; n];
                for &q in parent {
                    if q < n {
                        has_child[q] = true;
                    }
                }
                record(&mut (0..n).filter(|&i| parent[i] == n && !has_child[i]));
            })
        }
        FamilyId::UnrootedForests => for_each_forest(n, |degree| {
            record(&mut (0..n).filter(|&i| degree[i] == 0));
        }),
    }
    tally
}

fn fixed_points(p: &[usize]) -> impl Iterator<Item = usize> + '_ {
    (0..p.len()).filter(move |&i| p[i] == i)
}

fn cycle_lengths(p: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut lengths = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        lengths.push(len);
    }
    lengths
}

/// Heap's algorithm.
fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    visit(&p);
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            visit(&p);
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Every word of length `len` over `0..base`, odometer order.
fn for_each_word(len: usize, base: usize, mut visit: impl FnMut(&[usize])) {
    let mut w = vec![0usize; len];
    loop {
        visit(&w);
        let mut i = 0;
        loop {
            if i == len {
                return;
            }
            w[i] += 1;
            if w[i] < base {
                break;
            }
            w[i] = 0;
            i += 1;
        }
    }
}

/// Restricted growth strings: `blocks[i]` is the block index of point `i`.
fn for_each_set_partition(n: usize, mut visit: impl FnMut(&[usize])) {
    fn go(i: usize, used: usize, rgs: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if i == rgs.len() {
            visit(rgs);
            return;
        }
        for b in 0..=used {
            rgs[i] = b;
            go(i + 1, used.max(b + 1), rgs, visit);
        }
    }
    let mut rgs = vec![0usize; n];
    go(0, 0, &mut rgs, &mut visit);
}

fn parents_acyclic(parent: &[usize]) -> bool {
    let n = parent.len();
    (0..n).all(|start| {
        let mut x = start;
        for _ in 0..=n {
            if x == n {
                return true;
            }
            x = parent[x];
        }
        false
    })
}

/// Every acyclic edge subset of the complete graph on `n` vertices, visited
/// as a degree sequence.
fn for_each_forest(n: usize, mut visit: impl FnMut(&[usize])) {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    assert!(edges.len() < 64, "too many edges to enumerate");
    'subsets: for mask in 0u64..1 << edges.len() {
        let mut root: Vec<usize> = (0..n).collect();
        let mut degree = vec![0usize; n];
        for (e, &(a, b)) in edges.iter().enumerate() {
            if mask >> e & 1 == 0 {
                continue;
            }
            let (ra, rb) = (find(&mut root, a), find(&mut root, b));
            if ra == rb {
                continue 'subsets;
            }
            root[ra] = rb;
            degree[a] += 1;
            degree[b] += 1;
        }
        visit(&degree);
    }
}

fn find(root: &mut [usize], mut x: usize) -> usize {
    while root[x] != x {
        root[x] = root[root[x]];
        x = root[x];
    }
    x
}
