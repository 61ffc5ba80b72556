use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_integer::Integer;

use crate::error::AutError;

/// A permutation of `0..k` in image form.
pub type Perm = Vec<usize>;

/// `(a ∘ b)(i) = a(b(i))`.
pub fn compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&i| a[i]).collect()
}

pub fn inverse(a: &[usize]) -> Perm {
    let mut inv = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

pub fn identity(k: usize) -> Perm {
    (0..k).collect()
}

pub fn check_perm(p: &[usize], degree: usize) -> Result<(), AutError> {
    if p.len() != degree {
        return Err(AutError::DegreeMismatch(p.len(), degree));
    }
    let mut seen = vec![false; degree];
    for &x in p {
        if x >= degree || std::mem::replace(&mut seen[x], true) {
            return Err(AutError::InvalidPermutation(format!("{p:?}")));
        }
    }
    Ok(())
}

/// Sorted cycle lengths, fixed points included.
pub fn cycle_type(p: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
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
        out.push(len);
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

pub fn perm_order(p: &[usize]) -> u64 {
    cycle_type(p).into_iter().fold(1u64, |acc, c| acc.lcm(&(c as u64)))
}

/// Parses cycle notation on points `1..=degree`, e.g. `(1234)(56)` or
/// `(1,2,10)`. Without commas every digit is its own point.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Perm, AutError> {
    let bad = || AutError::InvalidPermutation(text.to_string());
    let mut perm = identity(degree);
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body_end = rest.find(')').ok_or_else(bad)?;
        let body = rest.strip_prefix('(').ok_or_else(bad)?[..body_end - 1].trim();
        rest = rest[body_end + 1..].trim_start();
        let points: Vec<usize> = if body.contains(',') {
            body.split(',')
                .map(|s| s.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_, _>>()?
        } else {
            body.chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
                .collect::<Result<_, _>>()?
        };
        if points.iter().any(|&x| x == 0 || x > degree) {
            return Err(bad());
        }
        let mut cycle = identity(degree);
        for (i, &x) in points.iter().enumerate() {
            cycle[x - 1] = points[(i + 1) % points.len()] - 1;
        }
        perm = compose(&cycle, &perm);
    }
    check_perm(&perm, degree)?;
    Ok(perm)
}

/// A permutation group kept as its full element set.
/// Equality compares degree and element sets; generators are incidental.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: BTreeSet<Perm>,
}

fn closure(degree: usize, gens: &[Perm]) -> BTreeSet<Perm> {
    let mut elements = BTreeSet::new();
    let id = identity(degree);
    elements.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = compose(g, &x);
            if elements.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    elements
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            elements: BTreeSet::from([identity(degree)]),
        }
    }

    pub fn generate(degree: usize, generators: Vec<Perm>) -> Result<Self, AutError> {
        for g in &generators {
            check_perm(g, degree)?;
        }
        let elements = closure(degree, &generators);
        Ok(PermGroup {
            degree,
            generators,
            elements,
        })
    }

    /// The group with the given elements, which must form a group. A small
    /// generating set is chosen greedily in element order.
    pub fn from_elements(degree: usize, elements: impl IntoIterator<Item = Perm>) -> Result<Self, AutError> {
        let elements: BTreeSet<Perm> = elements.into_iter().collect();
        for e in &elements {
            check_perm(e, degree)?;
        }
        let mut generators = Vec::new();
        let mut span = closure(degree, &generators);
        for e in &elements {
            if !span.contains(e) {
                generators.push(e.clone());
                span = closure(degree, &generators);
            }
        }
        if span != elements {
            return Err(AutError::InvalidPermutation("element set is not closed".into()));
        }
        Ok(PermGroup {
            degree,
            generators,
            elements,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> impl Iterator<Item = &Perm> {
        self.elements.iter()
    }

    pub fn contains(&self, p: &[usize]) -> bool {
        self.elements.contains(p)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut i = 0;
            while i < orbit.len() {
                let x = orbit[i];
                for g in &self.generators {
                    let y = g[x];
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    /// Orbit sizes, largest first.
    pub fn orbit_sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.orbits().iter().map(Vec::len).collect();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }

    /// Number of elements of each order.
    pub fn element_orders(&self) -> BTreeMap<u64, usize> {
        let mut m = BTreeMap::new();
        for e in &self.elements {
            *m.entry(perm_order(e)).or_insert(0) += 1;
        }
        m
    }

    fn cycle_type_counts(&self) -> BTreeMap<Vec<usize>, usize> {
        let mut m = BTreeMap::new();
        for e in &self.elements {
            *m.entry(cycle_type(e)).or_insert(0) += 1;
        }
        m
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PermGroup(degree {}, order {}, generators {:?})",
            self.degree,
            self.order(),
            self.generators
        )
    }
}

pub fn orbit_sizes(g: &PermGroup) -> Vec<usize> {
    g.orbit_sizes()
}

struct IsoSearch<'a> {
    g: &'a PermGroup,
    g_orbit: Vec<usize>,
    h_orbit: Vec<usize>,
    gens: Vec<Perm>,
}

impl IsoSearch<'_> {
    /// Extends `pi` (partial, `usize::MAX` = unassigned) point by point. For
    /// every generator `x` of `g` we keep the elements of `h` that could still
    /// equal `π x π⁻¹`.
    fn run(&self, pi: &mut Vec<usize>, used: &mut Vec<bool>, cands: Vec<Vec<&Perm>>, next: usize) -> bool {
        let k = self.g.degree;
        if next == k {
            return true;
        }
        for target in 0..k {
            if used[target] || self.g_orbit[next] != self.h_orbit[target] {
                continue;
            }
            pi[next] = target;
            used[target] = true;
            let filtered: Vec<Vec<&Perm>> = self
                .gens
                .iter()
                .zip(&cands)
                .map(|(x, cs)| {
                    cs.iter()
                        .copied()
                        .filter(|y| {
                            let fwd = x[next];
                            let back = x.iter().position(|&v| v == next).expect("permutation");
                            (pi[fwd] == usize::MAX || y[target] == pi[fwd])
                                && (pi[back] == usize::MAX || y[pi[back]] == target)
                        })
                        .collect()
                })
                .collect();
            if filtered.iter().all(|c| !c.is_empty()) && self.run(pi, used, filtered, next + 1) {
                return true;
            }
            pi[next] = usize::MAX;
            used[target] = false;
        }
        false
    }
}

fn orbit_size_of_points(g: &PermGroup) -> Vec<usize> {
    let mut out = vec![0; g.degree];
    for orbit in g.orbits() {
        for &x in &orbit {
            out[x] = orbit.len();
        }
    }
    out
}

/// A point relabelling `π` with `π g π⁻¹ = h`, if one exists.
pub fn permutation_isomorphic(g: &PermGroup, h: &PermGroup) -> Result<Option<Perm>, AutError> {
    if g.degree != h.degree {
        return Err(AutError::DegreeMismatch(g.degree, h.degree));
    }
    if g.order() != h.order() || g.orbit_sizes() != h.orbit_sizes() || g.cycle_type_counts() != h.cycle_type_counts() {
        return Ok(None);
    }
    let k = g.degree;
    let gens = g.generators.clone();
    let cands: Vec<Vec<&Perm>> = gens
        .iter()
        .map(|x| {
            let t = cycle_type(x);
            h.elements.iter().filter(|y| cycle_type(y) == t).collect()
        })
        .collect();
    let search = IsoSearch {
        g,
        g_orbit: orbit_size_of_points(g),
        h_orbit: orbit_size_of_points(h),
        gens,
    };
    let mut pi = vec![usize::MAX; k];
    let mut used = vec![false; k];
    if !search.run(&mut pi, &mut used, cands, 0) {
        return Ok(None);
    }
    let inv = inverse(&pi);
    let ok = search.gens.iter().all(|x| h.contains(&compose(&pi, &compose(x, &inv))));
    Ok(ok.then_some(pi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(degree: usize, gens: &[&str]) -> PermGroup {
        let gens = gens.iter().map(|g| parse_cycles(g, degree).unwrap()).collect();
        PermGroup::generate(degree, gens).unwrap()
    }

    #[test]
    fn cycle_notation() {
        assert_eq!(parse_cycles("(1234)(56)", 6).unwrap(), vec![1, 2, 3, 0, 5, 4]);
        assert_eq!(parse_cycles("(1,10)", 10).unwrap()[0], 9);
        assert!(parse_cycles("(17)", 6).is_err());
        assert_eq!(parse_cycles("", 3).unwrap(), identity(3));
    }

    #[test]
    fn orders_and_orbits() {
        let g = group(6, &["(12)(34)", "(13)(24)"]);
        assert_eq!(g.order(), 4);
        assert_eq!(g.orbit_sizes(), vec![4, 1, 1]);
        assert_eq!(PermGroup::trivial(3).orbit_sizes(), vec![1, 1, 1]);
        let s3 = group(3, &["(12)", "(123)"]);
        assert_eq!(s3.order(), 6);
        let rebuilt = PermGroup::from_elements(3, s3.elements().cloned()).unwrap();
        assert_eq!(rebuilt.order(), 6);
        assert!(rebuilt.generators().len() <= 2);
    }

    #[test]
    fn klein_four_groups_are_not_permutation_isomorphic() {
        let g = group(6, &["(12)(34)", "(13)(24)"]);
        let h = group(6, &["(12)(34)", "(12)(56)"]);
        assert_eq!(g.element_orders(), h.element_orders());
        assert!(permutation_isomorphic(&g, &h).unwrap().is_none());
        assert_eq!(permutation_isomorphic(&g, &g).unwrap(), Some(identity(6)));
    }

    #[test]
    fn conjugate_groups_are_found() {
        let g = group(5, &["(123)", "(12)"]);
        let h = group(5, &["(345)", "(45)"]);
        let pi = permutation_isomorphic(&g, &h).unwrap().unwrap();
        let inv = inverse(&pi);
        for x in g.elements() {
            assert!(h.contains(&compose(&pi, &compose(x, &inv))));
        }
    }
}
