use super::{Arity, Forest, Tree};

/// All trees with `n` leaves, built from the recurrence: a leaf when
/// `n == 1`, otherwise a node over every `arity`-tuple of smaller trees whose
/// leaf counts sum to `n`.
pub fn enumerate_trees(n: usize, arity: Arity) -> Vec<Tree> {
    let table = tree_table(n, arity);
    table.into_iter().nth(n).unwrap_or_default()
}

/// `|T_n|` by the same recurrence, without materialising trees.
pub fn count_trees(n: usize, arity: Arity) -> u128 {
    let k = arity.get();
    let mut counts = vec![0u128; n + 1];
    if n >= 1 {
        counts[1] = 1;
    }
    for m in 2..=n {
        // number of k-tuples of trees with total m leaves
        let mut ways = vec![0u128; m + 1];
        ways[0] = 1;
        for _ in 0..k {
            let mut next = vec![0u128; m + 1];
            for (total, &w) in ways.iter().enumerate() {
                if w == 0 {
                    continue;
                }
                for part in 1..m {
                    if total + part > m {
                        break;
                    }
                    next[total + part] += w * counts[part];
                }
            }
            ways = next;
        }
        counts[m] = ways[m];
    }
    counts[n]
}

fn tree_table(n: usize, arity: Arity) -> Vec<Vec<Tree>> {
    let mut table: Vec<Vec<Tree>> = vec![Vec::new(); n + 1];
    if n >= 1 {
        table[1].push(Tree::Leaf);
    }
    for m in 2..=n {
        let mut out = Vec::new();
        for children in sequences(arity.get(), m, &table, 1) {
            out.push(Tree::Node(children));
        }
        table[m] = out;
    }
    table
}

/// All sequences of `parts` trees from `table` whose leaf counts sum to
/// `total`.
fn sequences(parts: usize, total: usize, table: &[Vec<Tree>], min_part: usize) -> Vec<Vec<Tree>> {
    if parts == 0 {
        return if total == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    let max_first = total.saturating_sub(min_part * (parts - 1));
    for first in min_part..=max_first {
        if first >= table.len() || table[first].is_empty() {
            continue;
        }
        let rests = sequences(parts - 1, total - first, table, min_part);
        for head in &table[first] {
            for rest in &rests {
                let mut seq = Vec::with_capacity(parts);
                seq.push(head.clone());
                seq.extend(rest.iter().cloned());
                out.push(seq);
            }
        }
    }
    out
}

/// Every forest `leaves -> roots`, i.e. the hom-set `D(leaves, roots)`.
pub fn enumerate_forests(leaves: usize, roots: usize, arity: Arity) -> Vec<Forest> {
    let table = tree_table(leaves, arity);
    sequences(roots, leaves, &table, 1)
        .into_iter()
        .map(|trees| Forest::from_trees_unchecked(arity, trees))
        .collect()
}
