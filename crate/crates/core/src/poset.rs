//! Finite posets: construction from an order predicate or from cover data,
//! structural statistics (height, gradedness, lattice property), exact
//! isomorphism testing, and a canonical certificate.
//!
//! Elements are addressed by index 0..size; labels are opaque strings used
//! only for display and serialization.  Covers are stored as the transitive
//! reduction of the order, sorted lexicographically, and `(a, b)` always
//! means a < b with nothing strictly between.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    covers: Vec<(usize, usize)>,
    /// up[a] holds the bitset of {b : a <= b}, a included.
    up: Vec<Vec<u64>>,
}

fn bit_get(row: &[u64], i: usize) -> bool {
    row[i / 64] & (1 << (i % 64)) != 0
}

fn bit_set(row: &mut [u64], i: usize) {
    row[i / 64] |= 1 << (i % 64);
}

fn stride(k: usize) -> usize {
    k.div_ceil(64)
}

impl FinitePoset {
    /// Builds a poset from labels and a comparison predicate on indices.
    /// The predicate must be a partial order; any axiom violation is
    /// rejected with a witness in the error message.
    pub fn from_order_relation<F>(labels: Vec<String>, mut leq: F) -> Result<FinitePoset>
    where
        F: FnMut(usize, usize) -> bool,
    {
        let k = labels.len();
        let mut matrix = vec![false; k * k];
        for a in 0..k {
            for b in 0..k {
                matrix[a * k + b] = leq(a, b);
            }
        }
        for a in 0..k {
            if !matrix[a * k + a] {
                return Err(Error::NotPartialOrder {
                    witness: format!("not reflexive at element {a}"),
                });
            }
        }
        for a in 0..k {
            for b in 0..k {
                if a != b && matrix[a * k + b] && matrix[b * k + a] {
                    return Err(Error::NotPartialOrder {
                        witness: format!("antisymmetry fails on elements {a} and {b}"),
                    });
                }
            }
        }
        for a in 0..k {
            for b in 0..k {
                if !matrix[a * k + b] {
                    continue;
                }
                for c in 0..k {
                    if matrix[b * k + c] && !matrix[a * k + c] {
                        return Err(Error::NotPartialOrder {
                            witness: format!("transitivity fails on elements {a}, {b}, {c}"),
                        });
                    }
                }
            }
        }
        let mut up = vec![vec![0u64; stride(k)]; k];
        for a in 0..k {
            for b in 0..k {
                if matrix[a * k + b] {
                    bit_set(&mut up[a], b);
                }
            }
        }
        let covers = covers_from_up(&up);
        Ok(FinitePoset { labels, covers, up })
    }

    /// Rebuilds a poset from explicit cover data.  The pairs must form an
    /// acyclic relation that is its own transitive reduction.
    pub fn from_covers(labels: Vec<String>, covers: Vec<(usize, usize)>) -> Result<FinitePoset> {
        let k = labels.len();
        for &(a, b) in &covers {
            if a >= k || b >= k {
                return Err(Error::InvalidCovers(format!(
                    "pair ({a}, {b}) out of range for {k} elements"
                )));
            }
            if a == b {
                return Err(Error::InvalidCovers(format!("self-loop at element {a}")));
            }
        }
        // Kahn topological sort to reject cycles.
        let mut outgoing = vec![Vec::new(); k];
        let mut indegree = vec![0usize; k];
        for &(a, b) in &covers {
            outgoing[a].push(b);
            indegree[b] += 1;
        }
        let mut queue: Vec<usize> = (0..k).filter(|&x| indegree[x] == 0).collect();
        let mut topo = Vec::with_capacity(k);
        while let Some(x) = queue.pop() {
            topo.push(x);
            for &y in &outgoing[x] {
                indegree[y] -= 1;
                if indegree[y] == 0 {
                    queue.push(y);
                }
            }
        }
        if topo.len() != k {
            return Err(Error::InvalidCovers("cover relation contains a cycle".into()));
        }
        let mut up = vec![vec![0u64; stride(k)]; k];
        for &x in topo.iter().rev() {
            bit_set(&mut up[x], x);
            let successors = outgoing[x].clone();
            for y in successors {
                let reach = up[y].clone();
                for (word, extra) in up[x].iter_mut().zip(reach) {
                    *word |= extra;
                }
            }
        }
        let mut derived = covers_from_up(&up);
        let mut given = covers;
        given.sort_unstable();
        given.dedup();
        derived.sort_unstable();
        if given != derived {
            return Err(Error::InvalidCovers(
                "cover data is not its own transitive reduction".into(),
            ));
        }
        Ok(FinitePoset {
            labels,
            covers: derived,
            up,
        })
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Cover pairs (a, b), sorted lexicographically.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// True iff element a <= element b.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        bit_get(&self.up[a], b)
    }

    /// Index of the global minimum, if one exists.
    pub fn minimum(&self) -> Option<usize> {
        let k = self.size();
        (0..k).find(|&m| (0..k).all(|b| self.leq(m, b)))
    }

    /// Index of the global maximum, if one exists.
    pub fn maximum(&self) -> Option<usize> {
        let k = self.size();
        (0..k).find(|&m| (0..k).all(|a| self.leq(a, m)))
    }

    /// For each element, the longest chain length (in covers) ending at it.
    fn depths(&self) -> Vec<usize> {
        let k = self.size();
        let mut depth = vec![0usize; k];
        // Covers sorted by source do not give a topological order in
        // general, so walk elements in linear-extension order instead.
        for &x in &self.linear_extension() {
            for &(a, b) in &self.covers {
                if a == x {
                    depth[b] = depth[b].max(depth[x] + 1);
                }
            }
        }
        depth
    }

    /// Dual of [`Self::depths`]: longest chain length starting at each element.
    fn heights_above(&self) -> Vec<usize> {
        let k = self.size();
        let mut height = vec![0usize; k];
        for &x in self.linear_extension().iter().rev() {
            for &(a, b) in &self.covers {
                if a == x {
                    height[x] = height[x].max(height[b] + 1);
                }
            }
        }
        height
    }

    /// Indices in some order compatible with the partial order.
    fn linear_extension(&self) -> Vec<usize> {
        let k = self.size();
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&x| self.up[x].iter().map(|w| w.count_ones() as usize).sum::<usize>());
        order.reverse(); // large up-sets are low in the order
        order
    }

    /// Length of the longest chain, counted in cover steps.
    pub fn height(&self) -> usize {
        self.depths().into_iter().max().unwrap_or(0)
    }

    /// True iff all maximal chains between the global bounds have equal
    /// length.  Requires a unique minimum and maximum.
    pub fn is_graded(&self) -> Result<bool> {
        if self.size() == 0 {
            return Err(Error::Unbounded("empty poset".into()));
        }
        if self.minimum().is_none() {
            return Err(Error::Unbounded("no global minimum".into()));
        }
        if self.maximum().is_none() {
            return Err(Error::Unbounded("no global maximum".into()));
        }
        // With a unique minimum, the longest-chain depth is a rank function
        // exactly when every cover raises it by one.
        let depth = self.depths();
        Ok(self.covers.iter().all(|&(a, b)| depth[b] == depth[a] + 1))
    }

    /// True iff every pair of elements has a least upper bound and a
    /// greatest lower bound.
    pub fn is_lattice(&self) -> bool {
        let k = self.size();
        let words = stride(k);
        let mut down = vec![vec![0u64; words]; k];
        for a in 0..k {
            for b in 0..k {
                if self.leq(a, b) {
                    bit_set(&mut down[b], a);
                }
            }
        }
        let unique_extreme = |common: &[u64], cone: &[Vec<u64>]| -> bool {
            // Count elements of `common` that are extreme in it, i.e. whose
            // strict cone inside `common` is empty.
            let mut extremes = 0;
            for x in 0..k {
                if !bit_get(common, x) {
                    continue;
                }
                let dominated = cone[x]
                    .iter()
                    .zip(common)
                    .enumerate()
                    .all(|(w, (cx, cm))| {
                        let strict = cx & cm & !(((x / 64 == w) as u64) << (x % 64));
                        strict == 0
                    });
                if dominated {
                    extremes += 1;
                    if extremes > 1 {
                        return false;
                    }
                }
            }
            extremes == 1
        };
        for a in 0..k {
            for b in (a + 1)..k {
                let uppers: Vec<u64> = self.up[a]
                    .iter()
                    .zip(&self.up[b])
                    .map(|(x, y)| x & y)
                    .collect();
                if !unique_extreme(&uppers, &down) {
                    return false;
                }
                let lowers: Vec<u64> = down[a]
                    .iter()
                    .zip(&down[b])
                    .map(|(x, y)| x & y)
                    .collect();
                if !unique_extreme(&lowers, &self.up) {
                    return false;
                }
            }
        }
        true
    }

    /// Stable structural colors, comparable across posets: iterated
    /// refinement of (depth, height, in-degree, out-degree) along both the
    /// covers and the full order relation.  Refining along comparabilities
    /// keeps classes small even on rank-regular orders whose cover graphs
    /// stay too symmetric for neighbour counting alone.
    fn refined_colors(&self) -> Vec<usize> {
        type Signature = (usize, Vec<usize>, Vec<usize>, Vec<usize>, Vec<usize>);
        let k = self.size();
        if k == 0 {
            return Vec::new();
        }
        let depth = self.depths();
        let above = self.heights_above();
        let mut indeg = vec![0usize; k];
        let mut outdeg = vec![0usize; k];
        for &(a, b) in &self.covers {
            outdeg[a] += 1;
            indeg[b] += 1;
        }
        let initial: Vec<(usize, usize, usize, usize)> = (0..k)
            .map(|x| (depth[x], above[x], indeg[x], outdeg[x]))
            .collect();
        let mut distinct: Vec<_> = initial.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let mut colors: Vec<usize> = initial
            .iter()
            .map(|sig| distinct.binary_search(sig).expect("present"))
            .collect();
        let mut color_count = distinct.len();
        loop {
            let mut signatures: Vec<Signature> = (0..k)
                .map(|x| (colors[x], Vec::new(), Vec::new(), Vec::new(), Vec::new()))
                .collect();
            for &(a, b) in &self.covers {
                signatures[b].1.push(colors[a]);
                signatures[a].2.push(colors[b]);
            }
            for a in 0..k {
                for b in 0..k {
                    if a != b && bit_get(&self.up[a], b) {
                        signatures[a].3.push(colors[b]);
                        signatures[b].4.push(colors[a]);
                    }
                }
            }
            for sig in &mut signatures {
                sig.1.sort_unstable();
                sig.2.sort_unstable();
                sig.3.sort_unstable();
                sig.4.sort_unstable();
            }
            let mut distinct = signatures.clone();
            distinct.sort_unstable();
            distinct.dedup();
            if distinct.len() == color_count {
                return colors;
            }
            color_count = distinct.len();
            colors = signatures
                .iter()
                .map(|sig| distinct.binary_search(sig).expect("present"))
                .collect();
        }
    }

    fn cover_matrix(&self) -> Vec<bool> {
        let k = self.size();
        let mut matrix = vec![false; k * k];
        for &(a, b) in &self.covers {
            matrix[a * k + b] = true;
        }
        matrix
    }

    /// Searches for an isomorphism onto `other`; the witness maps indices
    /// of `self` to indices of `other` and preserves covers both ways.
    pub fn isomorphism_to(&self, other: &FinitePoset) -> Option<Vec<usize>> {
        let k = self.size();
        if k != other.size() || self.covers.len() != other.covers.len() {
            return None;
        }
        if k == 0 {
            return Some(Vec::new());
        }
        let colors_p = self.refined_colors();
        let colors_q = other.refined_colors();
        let mut sorted_p = colors_p.clone();
        let mut sorted_q = colors_q.clone();
        sorted_p.sort_unstable();
        sorted_q.sort_unstable();
        if sorted_p != sorted_q {
            return None;
        }
        let cover_p = self.cover_matrix();
        let cover_q = other.cover_matrix();
        // Place the most constrained (rarest) colors first.
        let mut frequency = BTreeMap::new();
        for &c in &colors_p {
            *frequency.entry(c).or_insert(0usize) += 1;
        }
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&x| (frequency[&colors_p[x]], colors_p[x], x));

        let mut image = vec![usize::MAX; k];
        let mut used = vec![false; k];
        fn extend(
            step: usize,
            order: &[usize],
            colors_p: &[usize],
            colors_q: &[usize],
            cover_p: &[bool],
            cover_q: &[bool],
            image: &mut [usize],
            used: &mut [bool],
        ) -> bool {
            let k = colors_p.len();
            if step == order.len() {
                return true;
            }
            let p = order[step];
            for q in 0..k {
                if used[q] || colors_q[q] != colors_p[p] {
                    continue;
                }
                let consistent = order[..step].iter().all(|&p_prev| {
                    let q_prev = image[p_prev];
                    cover_p[p_prev * k + p] == cover_q[q_prev * k + q]
                        && cover_p[p * k + p_prev] == cover_q[q * k + q_prev]
                });
                if !consistent {
                    continue;
                }
                image[p] = q;
                used[q] = true;
                if extend(step + 1, order, colors_p, colors_q, cover_p, cover_q, image, used) {
                    return true;
                }
                image[p] = usize::MAX;
                used[q] = false;
            }
            false
        }
        if extend(0, &order, &colors_p, &colors_q, &cover_p, &cover_q, &mut image, &mut used) {
            debug_assert!({
                let mut ok = true;
                for a in 0..k {
                    for b in 0..k {
                        ok &= cover_p[a * k + b] == cover_q[image[a] * k + image[b]];
                    }
                }
                ok
            });
            Some(image)
        } else {
            None
        }
    }

    pub fn is_isomorphic_to(&self, other: &FinitePoset) -> bool {
        self.isomorphism_to(other).is_some()
    }

    /// A canonical certificate: two posets yield identical bytes iff they
    /// are isomorphic.  The certificate encodes the size and the
    /// lexicographically minimal order-and-cover matrix over all element
    /// orderings compatible with the refined structural colors.
    ///
    /// The search prunes branches whose bits already exceed the best known
    /// prefix, but branches that tie exactly must all be explored, so large
    /// highly symmetric orders can take exponential time.  The posets this
    /// crate classifies stay far below that regime; up to about 60 elements
    /// canonicalization is effectively instant.
    pub fn canonical_form(&self) -> CanonicalForm {
        let k = self.size();
        let colors = self.refined_colors();
        let cover = self.cover_matrix();
        let mut order = vec![false; k * k];
        for a in 0..k {
            for b in 0..k {
                order[a * k + b] = a != b && bit_get(&self.up[a], b);
            }
        }
        // The fixed color layout: rarer colors fill earlier positions, so
        // the least constrained choices are deferred as long as possible.
        let mut frequency: BTreeMap<usize, usize> = BTreeMap::new();
        for &c in &colors {
            *frequency.entry(c).or_insert(0) += 1;
        }
        let mut layout: Vec<usize> = colors.clone();
        layout.sort_unstable_by_key(|&c| (frequency[&c], c));

        struct Search<'a> {
            k: usize,
            layout: &'a [usize],
            colors: &'a [usize],
            order: &'a [bool],
            cover: &'a [bool],
            placed: Vec<usize>,
            used: Vec<bool>,
            bits: Vec<bool>,
            best_bits: Option<Vec<bool>>,
            best_order: Vec<usize>,
            /// Bumped whenever best_bits is replaced, so suspended frames
            /// know to re-anchor their comparisons.
            generation: usize,
        }

        impl Search<'_> {
            // `tight_at_entry`: the current bit prefix equals the best one.
            // A leaf reached with a non-tight prefix is strictly smaller.
            fn run(&mut self, tight_at_entry: bool) {
                let t = self.placed.len();
                if t == self.k {
                    if self.best_bits.is_none() || !tight_at_entry {
                        self.best_bits = Some(self.bits.clone());
                        self.best_order = self.placed.clone();
                        self.generation += 1;
                    }
                    return;
                }
                let mut tight = tight_at_entry;
                let mut seen_generation = self.generation;
                let color = self.layout[t];
                for x in 0..self.k {
                    if self.used[x] || self.colors[x] != color {
                        continue;
                    }
                    if self.generation != seen_generation {
                        // Any replacement made below an earlier sibling
                        // extends the current prefix, so we are tight again.
                        tight = true;
                        seen_generation = self.generation;
                    }
                    // Emit the order and cover bits between x and everything
                    // placed.  The dense order bits come first: they split
                    // tied prefixes quickly, which keeps the search from
                    // wandering through equal-bit branches.
                    let start = self.bits.len();
                    for &p in &self.placed {
                        self.bits.push(self.order[p * self.k + x]);
                    }
                    for &p in &self.placed {
                        self.bits.push(self.order[x * self.k + p]);
                    }
                    for &p in &self.placed {
                        self.bits.push(self.cover[p * self.k + x]);
                    }
                    for &p in &self.placed {
                        self.bits.push(self.cover[x * self.k + p]);
                    }
                    let mut next_tight = tight;
                    let mut worse = false;
                    if tight {
                        if let Some(best) = &self.best_bits {
                            for i in start..self.bits.len() {
                                if self.bits[i] != best[i] {
                                    worse = self.bits[i];
                                    next_tight = false;
                                    break;
                                }
                            }
                        }
                    }
                    if !worse {
                        self.placed.push(x);
                        self.used[x] = true;
                        self.run(next_tight);
                        self.used[x] = false;
                        self.placed.pop();
                    }
                    self.bits.truncate(start);
                }
            }
        }

        let mut search = Search {
            k,
            layout: &layout,
            colors: &colors,
            order: &order,
            cover: &cover,
            placed: Vec::with_capacity(k),
            used: vec![false; k],
            bits: Vec::with_capacity(2 * k.saturating_sub(1) * k),
            best_bits: None,
            best_order: Vec::new(),
            generation: 0,
        };
        search.run(true);
        let best_bits = search.best_bits.unwrap_or_default();

        let mut certificate = Vec::with_capacity(4 + best_bits.len() / 8 + 1);
        certificate.extend_from_slice(&(k as u32).to_le_bytes());
        let mut current = 0u8;
        for (i, &bit) in best_bits.iter().enumerate() {
            if bit {
                current |= 1 << (i % 8);
            }
            if i % 8 == 7 {
                certificate.push(current);
                current = 0;
            }
        }
        if best_bits.len() % 8 != 0 {
            certificate.push(current);
        }
        CanonicalForm {
            certificate,
            ordering: search.best_order,
        }
    }

    /// Graphviz rendering with one node per element and cover edges drawn
    /// upward.  Output is byte-deterministic.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str("digraph poset {\n  rankdir=BT;\n  node [shape=box];\n");
        for (i, label) in self.labels.iter().enumerate() {
            let escaped = label.replace('\\', "\\\\").replace('"', "\\\"");
            let _ = writeln!(out, "  n{i} [label=\"{escaped}\"];");
        }
        for &(a, b) in &self.covers {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }
}

impl std::fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "FinitePoset(size={}, covers={:?})",
            self.size(),
            self.covers
        )
    }
}

#[derive(Serialize, Deserialize)]
struct PosetData {
    labels: Vec<String>,
    covers: Vec<(usize, usize)>,
}

impl Serialize for FinitePoset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PosetData {
            labels: self.labels.clone(),
            covers: self.covers.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FinitePoset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let data = PosetData::deserialize(deserializer)?;
        FinitePoset::from_covers(data.labels, data.covers).map_err(D::Error::custom)
    }
}

/// The result of canonicalization: the certificate bytes and the element
/// ordering that realizes them (`ordering[position]` = original index).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct CanonicalForm {
    certificate: Vec<u8>,
    ordering: Vec<usize>,
}

impl CanonicalForm {
    pub fn certificate(&self) -> &[u8] {
        &self.certificate
    }

    pub fn ordering(&self) -> &[usize] {
        &self.ordering
    }

    /// Lowercase hex of the certificate, for JSON and display.
    pub fn hex(&self) -> String {
        let mut out = String::with_capacity(self.certificate.len() * 2);
        for byte in &self.certificate {
            let _ = write!(out, "{byte:02x}");
        }
        out
    }
}

/// Transitive reduction read off a closed up-set matrix.
fn covers_from_up(up: &[Vec<u64>]) -> Vec<(usize, usize)> {
    let k = up.len();
    let words = stride(k);
    let mut down = vec![vec![0u64; words]; k];
    for a in 0..k {
        for b in 0..k {
            if bit_get(&up[a], b) {
                bit_set(&mut down[b], a);
            }
        }
    }
    let mut covers = Vec::new();
    for a in 0..k {
        for b in 0..k {
            if a == b || !bit_get(&up[a], b) {
                continue;
            }
            // Strictly-between witnesses: above a, below b, not a or b.
            let mut between = false;
            for w in 0..words {
                let mut word = up[a][w] & down[b][w];
                if w == a / 64 {
                    word &= !(1 << (a % 64));
                }
                if w == b / 64 {
                    word &= !(1 << (b % 64));
                }
                if word != 0 {
                    between = true;
                    break;
                }
            }
            if !between {
                covers.push((a, b));
            }
        }
    }
    covers.sort_unstable();
    covers
}
