//! Simultaneous refinement and backtracking for matrix isomorphism.
//!
//! Finds every pair `(σ, τ)` with `a[i][j] = b[σ(i)][τ(j)]`. Both matrices
//! carry an ordered partition of their rows and one of their columns, kept in
//! step: cell `c` on the `a` side may only map onto cell `c` on the `b` side.
//! Cells are split by the multiset of `(opposite cell, value)` pairs seen along
//! each line until stable; then one row is individualized and the search
//! branches over its possible images.

use std::collections::HashMap;

use crate::AlgebraicValue;

/// Interns the entries of several matrices into one dense id space.
#[derive(Debug, Default)]
pub struct Interner {
    ids: HashMap<AlgebraicValue, u32>,
}

impl Interner {
    pub fn matrix(&mut self, m: &[Vec<AlgebraicValue>]) -> Vec<Vec<u32>> {
        m.iter()
            .map(|r| {
                r.iter()
                    .map(|v| {
                        let next = self.ids.len() as u32;
                        *self.ids.entry(v.clone()).or_insert(next)
                    })
                    .collect()
            })
            .collect()
    }
}

#[derive(Clone)]
struct Side {
    rows: Vec<Vec<usize>>,
    cols: Vec<Vec<usize>>,
}

impl Side {
    fn discrete(rows: usize, cols: usize) -> Self {
        Side {
            rows: vec![(0..rows).collect()],
            cols: vec![(0..cols).collect()],
        }
    }
}

fn cell_index(cells: &[Vec<usize>], k: usize) -> Vec<u32> {
    let mut idx = vec![0; k];
    for (c, cell) in cells.iter().enumerate() {
        for &x in cell {
            idx[x] = c as u32;
        }
    }
    idx
}

type Signature = Vec<(u32, u32)>;

fn signatures(m: &[Vec<u32>], other_idx: &[u32], by_rows: bool) -> Vec<Signature> {
    let (rows, cols) = (m.len(), m.first().map_or(0, Vec::len));
    let (outer, inner) = if by_rows { (rows, cols) } else { (cols, rows) };
    (0..outer)
        .map(|x| {
            let mut s: Signature = (0..inner)
                .map(|y| {
                    let v = if by_rows { m[x][y] } else { m[y][x] };
                    (other_idx[y], v)
                })
                .collect();
            s.sort_unstable();
            s
        })
        .collect()
}

type Cells = Vec<Vec<usize>>;

/// Splits every cell on both sides by signature. `None` when the two sides
/// disagree, meaning no isomorphism extends the current state.
fn split(
    cells_a: &[Vec<usize>],
    cells_b: &[Vec<usize>],
    sig_a: &[Signature],
    sig_b: &[Signature],
) -> Option<(Cells, Cells)> {
    let mut out_a = Vec::with_capacity(cells_a.len());
    let mut out_b = Vec::with_capacity(cells_b.len());
    for (ca, cb) in cells_a.iter().zip(cells_b) {
        if ca.len() == 1 {
            if sig_a[ca[0]] != sig_b[cb[0]] {
                return None;
            }
            out_a.push(ca.clone());
            out_b.push(cb.clone());
            continue;
        }
        let mut ga: Vec<(&Signature, usize)> = ca.iter().map(|&x| (&sig_a[x], x)).collect();
        let mut gb: Vec<(&Signature, usize)> = cb.iter().map(|&x| (&sig_b[x], x)).collect();
        ga.sort();
        gb.sort();
        if ga.iter().zip(&gb).any(|(x, y)| x.0 != y.0) {
            return None;
        }
        for (sa, sb) in ga.chunk_by(|x, y| x.0 == y.0).zip(gb.chunk_by(|x, y| x.0 == y.0)) {
            out_a.push(sa.iter().map(|e| e.1).collect());
            out_b.push(sb.iter().map(|e| e.1).collect());
        }
    }
    Some((out_a, out_b))
}

fn refine(a: &[Vec<u32>], b: &[Vec<u32>], sa: &mut Side, sb: &mut Side) -> bool {
    let (rows, cols) = (a.len(), a.first().map_or(0, Vec::len));
    loop {
        let before = sa.rows.len() + sa.cols.len();
        let (ra, rb) = {
            let sig_a = signatures(a, &cell_index(&sa.cols, cols), true);
            let sig_b = signatures(b, &cell_index(&sb.cols, cols), true);
            match split(&sa.rows, &sb.rows, &sig_a, &sig_b) {
                Some(x) => x,
                None => return false,
            }
        };
        sa.rows = ra;
        sb.rows = rb;
        let (ca, cb) = {
            let sig_a = signatures(a, &cell_index(&sa.rows, rows), false);
            let sig_b = signatures(b, &cell_index(&sb.rows, rows), false);
            match split(&sa.cols, &sb.cols, &sig_a, &sig_b) {
                Some(x) => x,
                None => return false,
            }
        };
        sa.cols = ca;
        sb.cols = cb;
        if sa.rows.len() + sa.cols.len() == before {
            return true;
        }
    }
}

fn individualize(cells: &[Vec<usize>], c: usize, x: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(cells.len() + 1);
    out.extend_from_slice(&cells[..c]);
    out.push(vec![x]);
    out.push(cells[c].iter().copied().filter(|&y| y != x).collect());
    out.extend_from_slice(&cells[c + 1..]);
    out
}

struct Search<'a> {
    a: &'a [Vec<u32>],
    b: &'a [Vec<u32>],
    limit: Option<usize>,
    found: Vec<(Vec<usize>, Vec<usize>)>,
    nodes: usize,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.limit.is_some_and(|l| self.found.len() >= l)
    }

    fn run(&mut self, mut sa: Side, mut sb: Side) {
        self.nodes += 1;
        if self.done() || !refine(self.a, self.b, &mut sa, &mut sb) {
            return;
        }
        let pick = |cells: &[Vec<usize>]| cells.iter().position(|c| c.len() > 1);
        if let Some(c) = pick(&sa.rows) {
            let x = sa.rows[c][0];
            for &y in &sb.rows[c].clone() {
                let na = Side {
                    rows: individualize(&sa.rows, c, x),
                    cols: sa.cols.clone(),
                };
                let nb = Side {
                    rows: individualize(&sb.rows, c, y),
                    cols: sb.cols.clone(),
                };
                self.run(na, nb);
                if self.done() {
                    return;
                }
            }
            return;
        }
        if let Some(c) = pick(&sa.cols) {
            let x = sa.cols[c][0];
            for &y in &sb.cols[c].clone() {
                let na = Side {
                    rows: sa.rows.clone(),
                    cols: individualize(&sa.cols, c, x),
                };
                let nb = Side {
                    rows: sb.rows.clone(),
                    cols: individualize(&sb.cols, c, y),
                };
                self.run(na, nb);
                if self.done() {
                    return;
                }
            }
            return;
        }
        let (rows, cols) = (self.a.len(), self.a.first().map_or(0, Vec::len));
        let mut sigma = vec![0; rows];
        let mut tau = vec![0; cols];
        for (ca, cb) in sa.rows.iter().zip(&sb.rows) {
            sigma[ca[0]] = cb[0];
        }
        for (ca, cb) in sa.cols.iter().zip(&sb.cols) {
            tau[ca[0]] = cb[0];
        }
        let ok = (0..rows).all(|i| (0..cols).all(|j| self.a[i][j] == self.b[sigma[i]][tau[j]]));
        if ok {
            self.found.push((sigma, tau));
        }
    }
}

/// All `(σ, τ)` with `a[i][j] = b[σ(i)][τ(j)]`, in a deterministic order, at
/// most `limit` of them. Both matrices must be rectangular of the same shape.
pub fn isomorphisms(a: &[Vec<u32>], b: &[Vec<u32>], limit: Option<usize>) -> Vec<(Vec<usize>, Vec<usize>)> {
    let shape = |m: &[Vec<u32>]| (m.len(), m.first().map_or(0, Vec::len));
    let (rows, cols) = shape(a);
    if shape(b) != (rows, cols) || a.iter().chain(b).any(|r| r.len() != cols) {
        return Vec::new();
    }
    if rows == 0 {
        return vec![(Vec::new(), Vec::new())];
    }
    let mut s = Search {
        a,
        b,
        limit,
        found: Vec::new(),
        nodes: 0,
    };
    s.run(Side::discrete(rows, cols), Side::discrete(rows, cols));
    log::debug!("isomorphism search: {} nodes, {} solutions", s.nodes, s.found.len());
    s.found
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(v: &[&[u32]]) -> Vec<Vec<u32>> {
        v.iter().map(|r| r.to_vec()).collect()
    }

    #[test]
    fn identity_and_swap() {
        let a = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(isomorphisms(&a, &a, None), vec![(vec![0, 1], vec![0, 1])]);
        let b = m(&[&[4, 3], &[2, 1]]);
        assert_eq!(isomorphisms(&a, &b, None), vec![(vec![1, 0], vec![1, 0])]);
        let c = m(&[&[1, 2], &[3, 5]]);
        assert!(isomorphisms(&a, &c, None).is_empty());
    }

    #[test]
    fn rectangular_matrices() {
        let a = m(&[&[1, 2, 3]]);
        let b = m(&[&[3, 1, 2]]);
        assert_eq!(isomorphisms(&a, &b, None), vec![(vec![0], vec![1, 2, 0])]);
        assert!(isomorphisms(&a, &m(&[&[1], &[2], &[3]]), None).is_empty());
    }

    #[test]
    fn symmetric_matrix_has_full_group() {
        // the character table of C3 over integer ids: ω ↦ 1, ω² ↦ 2
        let a = m(&[&[0, 0, 0], &[0, 1, 2], &[0, 2, 1]]);
        let all = isomorphisms(&a, &a, None);
        assert_eq!(all.len(), 2);
        assert_eq!(isomorphisms(&a, &a, Some(1)).len(), 1);
    }
}
