//! Finite tables keyed by words over a coordinate window. Absent words carry the
//! implicit default (empty / zero), so a table describes a function on Σ^ℤ that
//! depends only on the coordinates of its window.

use std::collections::{BTreeMap, HashMap};

pub type Word = Vec<u8>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WordTable<V> {
    pub(crate) start: i64,
    pub(crate) len: usize,
    pub(crate) map: BTreeMap<Word, V>,
}

/// Calls `f` on every word of length `len` over an alphabet of size `q`.
pub(crate) fn for_each_word(len: usize, q: u8, mut f: impl FnMut(&[u8])) {
    let mut w = vec![0u8; len];
    loop {
        f(&w);
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            w[i] += 1;
            if w[i] < q {
                break;
            }
            w[i] = 0;
        }
    }
}

impl<V: Clone + PartialEq> WordTable<V> {
    pub fn new(start: i64, len: usize, map: BTreeMap<Word, V>) -> Self {
        WordTable { start, len, map }
    }

    pub fn constant(v: V) -> Self {
        let mut map = BTreeMap::new();
        map.insert(Vec::new(), v);
        WordTable { start: 0, len: 0, map }
    }

    pub fn empty() -> Self {
        WordTable {
            start: 0,
            len: 0,
            map: BTreeMap::new(),
        }
    }

    pub fn end(&self) -> i64 {
        self.start + self.len as i64 - 1
    }

    pub fn window(&self) -> Option<(i64, i64)> {
        (self.len > 0).then(|| (self.start, self.end()))
    }

    /// Rewrites the table on a window containing its own.
    pub fn extend_to(&self, start: i64, len: usize, q: u8) -> WordTable<V> {
        if self.len > 0 {
            assert!(
                start <= self.start && self.end() <= start + len as i64 - 1,
                "target window must contain the table window"
            );
        }
        let (left, right) = if self.len == 0 {
            (len, 0)
        } else {
            (
                (self.start - start) as usize,
                (start + len as i64 - 1 - self.end()) as usize,
            )
        };
        if left == 0 && right == 0 && self.len == len {
            return self.clone();
        }
        let mut map = BTreeMap::new();
        for (w, v) in &self.map {
            for_each_word(left, q, |l| {
                for_each_word(right, q, |r| {
                    let mut nw = Vec::with_capacity(len);
                    nw.extend_from_slice(l);
                    nw.extend_from_slice(w);
                    nw.extend_from_slice(r);
                    map.insert(nw, v.clone());
                });
            });
        }
        WordTable { start, len, map }
    }

    /// Shrinks the window while some boundary column is irrelevant.
    pub fn trim(&mut self, q: u8) {
        if self.map.is_empty() {
            self.start = 0;
            self.len = 0;
            return;
        }
        loop {
            if self.len == 0 {
                self.start = 0;
                return;
            }
            if self.column_free(true, q) {
                self.map = std::mem::take(&mut self.map)
                    .into_iter()
                    .filter(|(w, _)| w[0] == 0)
                    .map(|(w, v)| (w[1..].to_vec(), v))
                    .collect();
                self.start += 1;
                self.len -= 1;
            } else if self.column_free(false, q) {
                let last = self.len - 1;
                self.map = std::mem::take(&mut self.map)
                    .into_iter()
                    .filter(|(w, _)| w[last] == 0)
                    .map(|(w, v)| (w[..last].to_vec(), v))
                    .collect();
                self.len -= 1;
            } else {
                if self.len == 0 {
                    self.start = 0;
                }
                return;
            }
        }
    }

    fn column_free(&self, left: bool, q: u8) -> bool {
        let mut groups: HashMap<&[u8], (usize, &V)> = HashMap::new();
        for (w, v) in &self.map {
            let rest = if left { &w[1..] } else { &w[..w.len() - 1] };
            match groups.get_mut(rest) {
                Some((count, v0)) => {
                    if *v0 != v {
                        return false;
                    }
                    *count += 1;
                }
                None => {
                    groups.insert(rest, (1, v));
                }
            }
        }
        groups.values().all(|(c, _)| *c == q as usize)
    }

    /// Pairwise merge of compatible words; `f` combines values and may drop the entry.
    pub fn merge<W: Clone + PartialEq, U: Clone + PartialEq>(
        &self,
        other: &WordTable<W>,
        q: u8,
        mut f: impl FnMut(&V, &W) -> Option<U>,
    ) -> WordTable<U> {
        if self.len == 0 || other.len == 0 {
            // One side is constant on the whole space.
            let mut out = BTreeMap::new();
            if self.len == 0 {
                if let Some(a) = self.map.get(&Vec::new()) {
                    for (w, b) in &other.map {
                        if let Some(u) = f(a, b) {
                            out.insert(w.clone(), u);
                        }
                    }
                }
                return WordTable::new(other.start, other.len, out);
            }
            if let Some(b) = other.map.get(&Vec::new()) {
                for (w, a) in &self.map {
                    if let Some(u) = f(a, b) {
                        out.insert(w.clone(), u);
                    }
                }
            }
            return WordTable::new(self.start, self.len, out);
        }
        let hs = self.start.min(other.start);
        let he = self.end().max(other.end());
        let hlen = (he - hs + 1) as usize;
        let os = self.start.max(other.start);
        let oe = self.end().min(other.end());
        let mut index: HashMap<Vec<u8>, Vec<(&Word, &W)>> = HashMap::new();
        for (w, b) in &other.map {
            let key = if os <= oe {
                w[(os - other.start) as usize..=(oe - other.start) as usize].to_vec()
            } else {
                Vec::new()
            };
            index.entry(key).or_default().push((w, b));
        }
        let mut out = BTreeMap::new();
        for (wa, a) in &self.map {
            let key = if os <= oe {
                wa[(os - self.start) as usize..=(oe - self.start) as usize].to_vec()
            } else {
                Vec::new()
            };
            let Some(matches) = index.get(&key) else { continue };
            for (wb, b) in matches {
                let Some(u) = f(a, b) else { continue };
                let mut base = vec![u8::MAX; hlen];
                for (i, &s) in wa.iter().enumerate() {
                    base[(self.start - hs) as usize + i] = s;
                }
                for (i, &s) in wb.iter().enumerate() {
                    base[(other.start - hs) as usize + i] = s;
                }
                let gaps: Vec<usize> = (0..hlen).filter(|&i| base[i] == u8::MAX).collect();
                for_each_word(gaps.len(), q, |fill| {
                    let mut w = base.clone();
                    for (g, &s) in gaps.iter().zip(fill) {
                        w[*g] = s;
                    }
                    out.insert(w, u.clone());
                });
            }
        }
        WordTable::new(hs, hlen, out)
    }

    /// Value on a point whose coordinates are given by `coord`.
    pub fn lookup(&self, coord: impl Fn(i64) -> u8) -> Option<&V> {
        let w: Word = (0..self.len).map(|i| coord(self.start + i as i64)).collect();
        self.map.get(&w)
    }

    /// The distinct values (`None` meaning the default) taken on the cylinder
    /// fixing `word` from coordinate `start`.
    pub fn values_on_cylinder(&self, start: i64, word: &[u8], q: u8) -> Vec<Option<&V>> {
        if self.len == 0 {
            return vec![self.map.get(&Vec::new())];
        }
        let cs = start;
        let ce = start + word.len() as i64 - 1;
        let fs = self.start;
        let fe = self.end();
        if cs <= fs && fe <= ce {
            let sub = &word[(fs - cs) as usize..=(fe - cs) as usize];
            return vec![self.map.get(sub)];
        }
        // Partial overlap: collect matching table words and check coverage.
        let os = cs.max(fs);
        let oe = ce.min(fe);
        let free = self.len - if os <= oe { (oe - os + 1) as usize } else { 0 };
        let mut vals: Vec<Option<&V>> = Vec::new();
        let mut count: u128 = 0;
        for (w, v) in &self.map {
            let ok = (os..=oe).all(|i| w[(i - fs) as usize] == word[(i - cs) as usize]);
            if ok {
                count += 1;
                if !vals.contains(&Some(v)) {
                    vals.push(Some(v));
                }
            }
        }
        let total = (q as u128).checked_pow(free as u32).unwrap_or(u128::MAX);
        if count < total {
            vals.push(None);
        }
        vals
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(start: i64, len: usize, words: &[&str]) -> WordTable<()> {
        let map = words
            .iter()
            .map(|w| (w.bytes().map(|b| b - b'0').collect(), ()))
            .collect();
        WordTable::new(start, len, map)
    }

    #[test]
    fn trimming_drops_free_columns() {
        let mut t = set(0, 2, &["10", "11"]);
        t.trim(2);
        assert_eq!(t, set(0, 1, &["1"]));
        let mut full = set(-1, 2, &["00", "01", "10", "11"]);
        full.trim(2);
        assert_eq!(full, WordTable::constant(()));
        let mut none = set(3, 2, &[]);
        none.trim(2);
        assert_eq!(none, WordTable::empty());
    }

    #[test]
    fn merge_fills_gaps() {
        let a = set(0, 1, &["1"]);
        let b = set(2, 1, &["1"]);
        let m = a.merge(&b, 2, |_, _| Some(()));
        assert_eq!(m, set(0, 3, &["101", "111"]));
    }

    #[test]
    fn values_on_partial_overlap() {
        let t = set(0, 2, &["11"]);
        let v = t.values_on_cylinder(0, &[1], 2);
        assert_eq!(v.len(), 2);
        let v = t.values_on_cylinder(-1, &[0, 1, 1], 2);
        assert_eq!(v, vec![Some(&())]);
    }
}
