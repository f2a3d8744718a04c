//! Strongly connected components of the digraph of a square 0/1 matrix.

use crate::stp::BoolMatrix;

/// Components of the graph with an edge `j -> i` whenever `M[i, j] = 1`.
///
/// Iterative Tarjan. Vertices are 0-based, each component is sorted, and
/// components come out in reverse topological order (sinks first).
pub fn strongly_connected_components(m: &BoolMatrix) -> Vec<Vec<usize>> {
    assert!(m.is_square(), "SCCs need a square matrix");
    let k = m.rows();
    let succ: Vec<Vec<usize>> = (0..k).map(|j| m.column_ones(j).collect()).collect();

    const UNVISITED: usize = usize::MAX;
    let mut index = vec![UNVISITED; k];
    let mut low = vec![0; k];
    let mut on_stack = vec![false; k];
    let mut stack = Vec::new();
    let mut components = Vec::new();
    let mut next = 0;
    // (vertex, position in its successor list)
    let mut work: Vec<(usize, usize)> = Vec::new();

    for root in 0..k {
        if index[root] != UNVISITED {
            continue;
        }
        work.push((root, 0));
        while let Some(&(v, pos)) = work.last() {
            if pos == 0 && index[v] == UNVISITED {
                index[v] = next;
                low[v] = next;
                next += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if let Some(&w) = succ[v].get(pos) {
                work.last_mut().expect("non-empty").1 += 1;
                if index[w] == UNVISITED {
                    work.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            work.pop();
            if let Some(&(parent, _)) = work.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                components.push(comp);
            }
        }
    }
    components
}

/// True if the component has an internal edge (a cycle through its vertices).
pub fn is_nontrivial(m: &BoolMatrix, component: &[usize]) -> bool {
    component.len() > 1 || m.get(component[0], component[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut comps: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
        comps.sort();
        comps
    }

    #[test]
    fn latch_components() {
        let m = BoolMatrix::from_row_strings(&["1100", "1100", "0000", "0011"]).unwrap();
        let comps = strongly_connected_components(&m);
        assert_eq!(sorted(comps.clone()), [vec![0, 1], vec![2], vec![3]]);
        assert!(is_nontrivial(&m, &[0, 1]));
        assert!(!is_nontrivial(&m, &[2]));
        assert!(is_nontrivial(&m, &[3]));
    }

    #[test]
    fn cycle_is_one_component() {
        // 0 -> 1 -> 2 -> 0, i.e. M[1,0] = M[2,1] = M[0,2] = 1.
        let m = BoolMatrix::from_fn(3, 3, |i, j| i == (j + 1) % 3);
        assert_eq!(strongly_connected_components(&m), [vec![0, 1, 2]]);
    }

    #[test]
    fn sinks_come_first() {
        // 0 -> 1 -> 2, no cycles.
        let m = BoolMatrix::from_fn(3, 3, |i, j| i == j + 1);
        assert_eq!(
            strongly_connected_components(&m),
            [vec![2], vec![1], vec![0]]
        );
    }

    #[test]
    fn long_path_does_not_overflow() {
        let k = 20_000;
        let mut m = BoolMatrix::zeros(k, k);
        for j in 0..k - 1 {
            m.set(j + 1, j, true);
        }
        assert_eq!(strongly_connected_components(&m).len(), k);
    }
}
