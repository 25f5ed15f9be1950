/// Fenwick-indexed rate table for exact Gillespie sampling.
///
/// `sample` finds the clock that fires, proportional to its rate, in
/// O(log n); `set` updates one rate in O(log n). The tree is rebuilt
/// periodically so floating-point drift in the prefix sums cannot
/// accumulate over long runs.
pub struct RateIndex {
    tree: Vec<f64>,
    rates: Vec<f64>,
    ops: usize,
}

impl RateIndex {
    pub fn new(rates: Vec<f64>) -> Self {
        let mut idx = RateIndex {
            tree: Vec::new(),
            rates,
            ops: 0,
        };
        idx.rebuild();
        idx
    }

    fn rebuild(&mut self) {
        let n = self.rates.len();
        self.tree = vec![0.0; n + 1];
        for i in 0..n {
            let r = self.rates[i];
            let mut k = i + 1;
            while k <= n {
                self.tree[k] += r;
                k += k & k.wrapping_neg();
            }
        }
    }

    pub fn len(&self) -> usize {
        self.rates.len()
    }

    pub fn get(&self, i: usize) -> f64 {
        self.rates[i]
    }

    pub fn set(&mut self, i: usize, rate: f64) {
        debug_assert!(rate >= 0.0);
        let delta = rate - self.rates[i];
        if delta == 0.0 {
            return;
        }
        self.rates[i] = rate;
        let mut k = i + 1;
        while k <= self.tree.len() - 1 {
            self.tree[k] += delta;
            k += k & k.wrapping_neg();
        }
        self.ops += 1;
        if self.ops >= 1 << 21 {
            self.ops = 0;
            self.rebuild();
        }
    }

    pub fn total(&self) -> f64 {
        let mut k = self.tree.len() - 1;
        let mut s = 0.0;
        while k > 0 {
            s += self.tree[k];
            k -= k & k.wrapping_neg();
        }
        s
    }

    /// Index of the clock containing cumulative coordinate `x` in [0, total).
    pub fn sample(&self, mut x: f64) -> usize {
        let n = self.tree.len() - 1;
        let mut pos = 0usize;
        let mut bit = n.next_power_of_two();
        if bit > n {
            bit >>= 1;
        }
        while bit > 0 {
            let next = pos + bit;
            if next <= n && self.tree[next] <= x {
                x -= self.tree[next];
                pos = next;
            }
            bit >>= 1;
        }
        // pos is the count of full prefixes passed; clamp onto a live rate
        let mut i = pos.min(n - 1);
        while self.rates[i] == 0.0 && i + 1 < n {
            i += 1;
        }
        while self.rates[i] == 0.0 && i > 0 {
            i -= 1;
        }
        i
    }
}
