//! Finite groups as Cayley tables, with the subgroup and quotient machinery
//! the construction needs.
//!
//! Elements are indices `0..n`, the identity is `0`. Every "pick one" operation
//! resolves ties by element index so results are reproducible.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::arith;
use crate::{Error, Result};

pub use crate::arith::p_valuation;

pub const DEFAULT_ORDER_BOUND: usize = 128;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    element_orders: Vec<usize>,
    generators: Vec<usize>,
    name: Option<String>,
}

impl FiniteGroup {
    /// Closure of permutation generators on `0..degree`. Elements are numbered
    /// breadth-first from the identity, multiplying by the generators in the
    /// given order. The product `x * y` applies `x` first, then `y`.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>], max_order: usize) -> Result<Self> {
        for (i, g) in gens.iter().enumerate() {
            if g.len() != degree {
                return Err(Error::InvalidGroup(format!(
                    "generator {i} has length {} != degree {degree}",
                    g.len()
                )));
            }
            let mut seen = vec![false; degree];
            for &p in g {
                if p >= degree || core::mem::replace(&mut seen[p], true) {
                    return Err(Error::InvalidGroup(format!("generator {i} is not a permutation")));
                }
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut perms = vec![identity.clone()];
        let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        index.insert(identity, 0);
        let mut cursor = 0;
        while cursor < perms.len() {
            for g in gens {
                let next: Vec<usize> = perms[cursor].iter().map(|&i| g[i]).collect();
                if !index.contains_key(&next) {
                    if perms.len() == max_order {
                        return Err(Error::OrderBound(max_order));
                    }
                    index.insert(next.clone(), perms.len());
                    perms.push(next);
                }
            }
            cursor += 1;
        }
        let n = perms.len();
        let mut table = vec![0; n * n];
        for (a, pa) in perms.iter().enumerate() {
            for (b, pb) in perms.iter().enumerate() {
                let prod: Vec<usize> = pa.iter().map(|&i| pb[i]).collect();
                table[a * n + b] = index[&prod];
            }
        }
        let mut group = Self::from_table_unchecked(table, None);
        group.generators = gens.iter().map(|g| index[g]).filter(|&g| g != 0).collect();
        Ok(group)
    }

    /// Validates a Cayley table: square, Latin, `0` is the identity, associative.
    pub fn from_cayley_table(rows: &[Vec<usize>], max_order: usize) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if n > max_order {
            return Err(Error::OrderBound(max_order));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {i} has length {}", row.len())));
            }
            table.extend_from_slice(row);
        }
        if table.iter().any(|&x| x >= n) {
            return Err(Error::InvalidGroup("entry out of range".into()));
        }
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                if core::mem::replace(&mut row_seen[table[i * n + j]], true)
                    || core::mem::replace(&mut col_seen[table[j * n + i]], true)
                {
                    return Err(Error::InvalidGroup("table is not a Latin square".into()));
                }
            }
            if table[i] != i || table[i * n] != i {
                return Err(Error::InvalidGroup("element 0 is not the identity".into()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(Error::InvalidGroup(format!("associativity fails at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(Self::from_table_unchecked(table, None))
    }

    /// Table already known to be a group table with identity `0`.
    pub(crate) fn from_table_unchecked(table: Vec<usize>, name: Option<String>) -> Self {
        let n = table.len().isqrt();
        debug_assert_eq!(n * n, table.len());
        let mut inverses = vec![0; n];
        for a in 0..n {
            inverses[a] = (0..n).find(|&b| table[a * n + b] == 0).expect("group table");
        }
        let mut element_orders = vec![1; n];
        for (a, ord) in element_orders.iter_mut().enumerate() {
            let mut x = a;
            while x != 0 {
                x = table[x * n + a];
                *ord += 1;
            }
        }
        let mut group = FiniteGroup {
            order: n,
            table,
            inverses,
            element_orders,
            generators: Vec::new(),
            name,
        };
        group.generators = group.greedy_generators();
        group
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.closure(&[]);
        for x in 0..self.order {
            if !span.contains(x) {
                gens.push(x);
                span = self.closure(&gens);
            }
        }
        gens
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn cayley_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.element_orders[a]
    }

    pub fn element_orders(&self) -> &[usize] {
        &self.element_orders
    }

    pub fn pow(&self, a: usize, e: i64) -> usize {
        let o = self.element_orders[a] as i64;
        let e = e.rem_euclid(o);
        (0..e).fold(0, |acc, _| self.mul(acc, a))
    }

    /// `x^g = g^{-1} x g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|&a| self.generators.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted(self.order, (0..self.order).collect(), self.generators.clone())
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup::from_sorted(self.order, vec![0], Vec::new())
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut found = vec![0];
        let mut cursor = 0;
        while cursor < found.len() {
            let x = found[cursor];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    found.push(y);
                }
            }
            cursor += 1;
        }
        found.sort_unstable();
        let gens: Vec<usize> = gens.iter().copied().filter(|&g| g != 0).collect();
        Subgroup::from_sorted(self.order, found, gens)
    }

    /// Checked conversion of an element set into a subgroup.
    pub fn subgroup(&self, elements: &[usize]) -> Result<Subgroup> {
        let mut els = elements.to_vec();
        els.sort_unstable();
        els.dedup();
        if els.iter().any(|&x| x >= self.order) {
            return Err(Error::InvalidGroup("element out of range".into()));
        }
        let s = self.closure(&els);
        if s.elements != els {
            return Err(Error::InvalidGroup("element set is not a subgroup".into()));
        }
        Ok(s)
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut gens = a.gens.clone();
        gens.extend_from_slice(&b.gens);
        self.closure(&gens)
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let els: Vec<usize> = a.elements.iter().copied().filter(|&x| b.contains(x)).collect();
        let gens = self.generators_for(&els);
        Subgroup::from_sorted(self.order, els, gens)
    }

    fn generators_for(&self, sorted: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.trivial();
        for &x in sorted {
            if !span.contains(x) {
                gens.push(x);
                span = self.closure(&gens);
            }
        }
        gens
    }

    /// `H^g = g^{-1} H g`.
    pub fn conjugate_subgroup(&self, h: &Subgroup, g: usize) -> Subgroup {
        let mut els: Vec<usize> = h.elements.iter().map(|&x| self.conj(x, g)).collect();
        els.sort_unstable();
        let gens = h.gens.iter().map(|&x| self.conj(x, g)).collect();
        Subgroup::from_sorted(self.order, els, gens)
    }

    fn normalizes(&self, g: usize, h: &Subgroup) -> bool {
        h.gens.iter().all(|&x| h.contains(self.conj(x, g)))
    }

    pub fn normalizer(&self, k: &Subgroup) -> Subgroup {
        let els: Vec<usize> = (0..self.order).filter(|&g| self.normalizes(g, k)).collect();
        let gens = self.generators_for(&els);
        Subgroup::from_sorted(self.order, els, gens)
    }

    /// Normalizer of `k` inside `within`.
    pub fn normalizer_in(&self, within: &Subgroup, k: &Subgroup) -> Subgroup {
        let els: Vec<usize> = within
            .elements
            .iter()
            .copied()
            .filter(|&g| self.normalizes(g, k))
            .collect();
        let gens = self.generators_for(&els);
        Subgroup::from_sorted(self.order, els, gens)
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.generators.iter().all(|&g| self.normalizes(g, h))
    }

    /// `h` normal in `within` (with `h <= within`).
    pub fn is_normal_in(&self, within: &Subgroup, h: &Subgroup) -> bool {
        h.is_subset(within) && within.gens.iter().all(|&g| self.normalizes(g, h))
    }

    pub fn centralizer(&self, within: &Subgroup, x: usize) -> Subgroup {
        let els: Vec<usize> = within
            .elements
            .iter()
            .copied()
            .filter(|&g| self.mul(g, x) == self.mul(x, g))
            .collect();
        let gens = self.generators_for(&els);
        Subgroup::from_sorted(self.order, els, gens)
    }

    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        self.all_subgroups_of(&self.whole())
    }

    /// Every subgroup of `within`, sorted by `(order, element set)`: cyclic
    /// subgroups, then joins with cyclic subgroups until saturation.
    pub fn all_subgroups_of(&self, within: &Subgroup) -> Vec<Subgroup> {
        let cyclics: BTreeSet<Subgroup> = within.elements.iter().map(|&x| self.closure(&[x])).collect();
        let mut all: BTreeSet<Subgroup> = cyclics.clone();
        let mut frontier: Vec<Subgroup> = cyclics.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                for c in &cyclics {
                    if c.is_subset(s) {
                        continue;
                    }
                    let j = self.join(s, c);
                    if !all.contains(&j) {
                        all.insert(j.clone());
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        all.into_iter().collect()
    }

    /// Least-index element generating `h`, if `h` is cyclic.
    pub fn is_cyclic(&self, h: &Subgroup) -> Option<usize> {
        h.elements
            .iter()
            .copied()
            .find(|&x| self.element_orders[x] == h.order())
    }

    /// Minimal normal subgroups of `h/k` (given as preimages in `h`),
    /// sorted by `(order, element set)`.
    pub fn minimal_normal_over(&self, h: &Subgroup, k: &Subgroup) -> Vec<Subgroup> {
        let mut closures: BTreeSet<Subgroup> = BTreeSet::new();
        for &x in &h.elements {
            if k.contains(x) {
                continue;
            }
            let mut gens = k.gens.clone();
            gens.extend(h.elements.iter().map(|&g| self.conj(x, g)));
            gens.sort_unstable();
            gens.dedup();
            closures.insert(self.closure(&gens));
        }
        let all: Vec<Subgroup> = closures.into_iter().collect();
        all.iter()
            .filter(|m| !all.iter().any(|other| other != *m && other.is_subset(m)))
            .cloned()
            .collect()
    }

    pub fn minimal_normal_subgroups(&self) -> Vec<Subgroup> {
        self.minimal_normal_over(&self.whole(), &self.trivial())
    }

    pub fn quotient(&self, k: &Subgroup) -> Result<QuotientGroup> {
        self.subquotient(&self.whole(), k)
    }

    /// `u/k` for `k` normal in `u`. Cosets are numbered by their least member.
    pub fn subquotient(&self, u: &Subgroup, k: &Subgroup) -> Result<QuotientGroup> {
        if !self.is_normal_in(u, k) {
            return Err(Error::NotNormal);
        }
        let mut projection = vec![None; self.order];
        let mut lift = Vec::new();
        for &x in &u.elements {
            if projection[x].is_some() {
                continue;
            }
            let idx = lift.len();
            lift.push(x);
            for &y in &k.elements {
                projection[self.mul(x, y)] = Some(idx);
            }
        }
        let m = lift.len();
        let mut table = vec![0; m * m];
        for i in 0..m {
            for j in 0..m {
                table[i * m + j] = projection[self.mul(lift[i], lift[j])].expect("closed");
            }
        }
        Ok(QuotientGroup {
            ambient: u.clone(),
            kernel: k.clone(),
            quotient: FiniteGroup::from_table_unchecked(table, None),
            projection,
            lift,
        })
    }

    /// Elements of `within` of `p`-power order.
    fn p_elements(&self, within: &Subgroup, p: u64) -> Vec<usize> {
        within
            .elements
            .iter()
            .copied()
            .filter(|&x| is_power_of(self.element_orders[x] as u64, p))
            .collect()
    }

    /// A finite group is nilpotent iff every Sylow subgroup is normal, iff for
    /// each prime the `p`-elements number exactly `p^{v_p(n)}`.
    pub fn is_nilpotent(&self) -> bool {
        let whole = self.whole();
        arith::prime_factors(self.order as u128).into_iter().all(|p| {
            let full = p.pow(p_valuation(self.order as u64, p));
            self.p_elements(&whole, p).len() as u64 == full
        })
    }

    pub fn sylow_decomposition(&self) -> Result<BTreeMap<u64, Subgroup>> {
        if !self.is_nilpotent() {
            return Err(Error::NotNilpotent);
        }
        let whole = self.whole();
        Ok(arith::prime_factors(self.order as u128)
            .into_iter()
            .map(|p| {
                let els = self.p_elements(&whole, p);
                let gens = self.generators_for(&els);
                (p, Subgroup::from_sorted(self.order, els, gens))
            })
            .collect())
    }

    /// `(Q_2, Q_{2'})` for a nilpotent `q`.
    pub fn two_part_split(&self) -> Result<(Subgroup, Subgroup)> {
        self.two_part_split_of(&self.whole())
    }

    /// 2-part and 2'-part of a nilpotent subgroup `within`.
    pub fn two_part_split_of(&self, within: &Subgroup) -> Result<(Subgroup, Subgroup)> {
        let two: Vec<usize> = self.p_elements(within, 2);
        let odd: Vec<usize> = within
            .elements
            .iter()
            .copied()
            .filter(|&x| self.element_orders[x] % 2 == 1)
            .collect();
        if two.len() * odd.len() != within.order() {
            return Err(Error::NotNilpotent);
        }
        let g2 = self.generators_for(&two);
        let g2p = self.generators_for(&odd);
        let s2 = Subgroup::from_sorted(self.order, two, g2);
        let s2p = Subgroup::from_sorted(self.order, odd, g2p);
        if self.closure(&s2.gens).elements != s2.elements || self.closure(&s2p.gens).elements != s2p.elements {
            return Err(Error::NotNilpotent);
        }
        Ok((s2, s2p))
    }

    /// `x = x_2 * x_{2'}` with commuting factors of 2-power and odd order,
    /// via CRT on the exponent.
    pub fn element_two_split(&self, x: usize) -> (usize, usize) {
        let o = self.element_orders[x] as u64;
        let two = 1u64 << p_valuation(o, 2);
        let odd = o / two;
        // e = 1 mod two, e = 0 mod odd
        let e = (0..o).find(|&e| e % two == 1 % two && e % odd == 0).expect("CRT");
        let x2 = self.pow(x, e as i64);
        let x2p = self.pow(x, 1 - e as i64);
        (x2, x2p)
    }

    /// First subgroup `m` of `q` (in the `all_subgroups` order) with
    /// `m ∩ a = 1` and `m a = q`.
    pub fn find_complement(&self, a: &Subgroup) -> Option<Subgroup> {
        self.find_complement_in(&self.whole(), a)
    }

    pub fn find_complement_in(&self, within: &Subgroup, a: &Subgroup) -> Option<Subgroup> {
        self.complements_in(within, a).next()
    }

    pub fn find_cyclic_complement(&self, a: &Subgroup) -> Option<(Subgroup, usize)> {
        self.find_cyclic_complement_in(&self.whole(), a)
    }

    pub fn find_cyclic_complement_in(&self, within: &Subgroup, a: &Subgroup) -> Option<(Subgroup, usize)> {
        self.complements_in(within, a)
            .find_map(|m| self.is_cyclic(&m).map(|g| (m, g)))
    }

    fn complements_in<'a>(&'a self, within: &Subgroup, a: &'a Subgroup) -> impl Iterator<Item = Subgroup> + 'a {
        let target = within.order() / a.order();
        self.all_subgroups_of(within)
            .into_iter()
            .filter(move |m| m.order() == target && m.elements.iter().all(|&x| x == 0 || !a.contains(x)))
    }

    /// One representative per right coset `E g`: the least element of each
    /// coset, in ascending order.
    pub fn right_transversal(&self, e: &Subgroup) -> Vec<usize> {
        let mut covered = vec![false; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if covered[g] {
                continue;
            }
            reps.push(g);
            for &x in &e.elements {
                covered[self.mul(x, g)] = true;
            }
        }
        reps
    }

    /// Conjugacy classes, each sorted, ordered by least member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for x in 0..self.order {
            if seen[x] {
                continue;
            }
            let mut cls: Vec<usize> = (0..self.order).map(|g| self.conj(x, g)).collect();
            cls.sort_unstable();
            cls.dedup();
            for &y in &cls {
                seen[y] = true;
            }
            classes.push(cls);
        }
        classes
    }

    /// Stable 64-bit FNV-1a digest of the Cayley table.
    pub fn table_digest(&self) -> u64 {
        let mut h: u64 = 0xcbf29ce484222325;
        for &x in core::iter::once(&self.order).chain(self.table.iter()) {
            for b in (x as u32).to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
        }
        h
    }
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// A subgroup of some ambient [`FiniteGroup`], stored as a sorted element list
/// with a membership mask and a generating set.
#[derive(Clone, Debug)]
pub struct Subgroup {
    elements: Vec<usize>,
    mask: Vec<u64>,
    gens: Vec<usize>,
}

impl Subgroup {
    fn from_sorted(parent_order: usize, elements: Vec<usize>, gens: Vec<usize>) -> Self {
        let mut mask = vec![0u64; parent_order.div_ceil(64)];
        for &x in &elements {
            mask[x / 64] |= 1 << (x % 64);
        }
        Subgroup { elements, mask, gens }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask.get(x / 64).is_some_and(|w| w >> (x % 64) & 1 == 1)
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.order() <= other.order() && self.mask.iter().zip(&other.mask).all(|(a, b)| a & !b == 0)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn index_in(&self, other: &Subgroup) -> usize {
        other.order() / self.order()
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.order(), &self.elements).cmp(&(other.order(), &other.elements))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `U/K` realised as its own [`FiniteGroup`].
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    pub ambient: Subgroup,
    pub kernel: Subgroup,
    pub quotient: FiniteGroup,
    /// Parent index to quotient index; `None` outside the ambient subgroup.
    pub projection: Vec<Option<usize>>,
    /// Least member of each coset.
    pub lift: Vec<usize>,
}

impl QuotientGroup {
    pub fn project(&self, x: usize) -> usize {
        self.projection[x].expect("element of the ambient subgroup")
    }

    pub fn lift(&self, y: usize) -> usize {
        self.lift[y]
    }

    /// Full preimage in the parent group of a subgroup of the quotient.
    pub fn preimage(&self, parent: &FiniteGroup, s: &Subgroup) -> Subgroup {
        let els: Vec<usize> = self
            .ambient
            .elements
            .iter()
            .copied()
            .filter(|&x| s.contains(self.project(x)))
            .collect();
        let mut gens = self.kernel.gens.clone();
        gens.extend(s.gens.iter().map(|&y| self.lift[y]));
        let sub = Subgroup::from_sorted(parent.order(), els, gens);
        debug_assert_eq!(parent.closure(&sub.gens), sub);
        sub
    }

    pub fn image(&self, s: &Subgroup) -> Subgroup {
        let mut els: Vec<usize> = s.elements.iter().map(|&x| self.project(x)).collect();
        els.sort_unstable();
        els.dedup();
        let gens = s.gens.iter().map(|&x| self.project(x)).collect();
        Subgroup::from_sorted(self.quotient.order(), els, gens)
    }
}
