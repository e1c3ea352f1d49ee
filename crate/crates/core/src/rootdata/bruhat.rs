//! Bruhat order on `W = Ω W_aff`.

use super::{RootDatum, WeylElement, CACHE_LIMIT};

impl RootDatum {
    /// `a ≤ b`: equal Ω-parts and the subword criterion on the `W_aff` parts,
    /// decided by the right-descent recursion.
    pub fn bruhat_leq(&self, a: &WeylElement, b: &WeylElement) -> bool {
        let (la, lb) = (self.length(a), self.length(b));
        self.leq_rec(a, la, b, lb)
    }

    fn leq_rec(&self, a: &WeylElement, la: usize, b: &WeylElement, lb: usize) -> bool {
        if la > lb {
            return false;
        }
        if la == lb {
            return a == b;
        }
        if la == 0 {
            return self.omega_split(b).u == *a;
        }
        let key = (a.clone(), b.clone());
        if let Some(r) = self.caches.lock().bruhat.get(&key) {
            return *r;
        }
        let s = self.right_descent(b).expect("positive length");
        let g = &self.gens[s].elt;
        let bs = self.mul(b, g);
        let as_ = self.mul(a, g);
        let las = self.length(&as_);
        let r = if las < la {
            self.leq_rec(&as_, las, &bs, lb - 1)
        } else {
            self.leq_rec(a, la, &bs, lb - 1)
        };
        let mut c = self.caches.lock();
        if c.bruhat.len() > CACHE_LIMIT {
            c.bruhat.clear();
        }
        c.bruhat.insert(key, r);
        r
    }

    /// All elements `≤ w`, from subwords of a reduced word.
    pub fn bruhat_interval_below(&self, w: &WeylElement) -> Vec<WeylElement> {
        let split = self.omega_split(w);
        let mut set = std::collections::BTreeSet::from([split.u.clone()]);
        for &g in &split.word {
            let ext: Vec<WeylElement> = set
                .iter()
                .map(|x| self.mul(x, &self.gens[g].elt))
                .collect();
            set.extend(ext);
        }
        set.into_iter().collect()
    }

    /// Smallest Bruhat-downward-closed set containing `elts`, sorted by length.
    pub fn downward_closure(&self, elts: &[WeylElement]) -> Vec<WeylElement> {
        let mut set = std::collections::BTreeSet::new();
        for w in elts {
            if !set.contains(w) {
                set.extend(self.bruhat_interval_below(w));
            }
        }
        let mut out: Vec<WeylElement> = set.into_iter().collect();
        out.sort_by_cached_key(|w| (self.length(w), w.clone()));
        out
    }
}
