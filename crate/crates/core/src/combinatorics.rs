//! Fault-set enumeration.

/// `C(n, k)` without overflow for the sizes used here.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of subsets of an `n`-set with at most `k` elements.
pub fn subsets_up_to(n: u64, k: u64) -> u128 {
    (0..=k.min(n)).map(|s| binomial(n, s)).sum()
}

/// The `size`-element subsets of `0..universe` in colex order.
#[derive(Clone, Debug)]
pub struct Subsets {
    universe: usize,
    current: Vec<usize>,
    done: bool,
}

impl Subsets {
    pub fn new(universe: usize, size: usize) -> Self {
        Self {
            universe,
            current: (0..size).collect(),
            done: size > universe,
        }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let s = self.current.len();
        // colex successor: bump the lowest element that has room
        let mut i = 0;
        loop {
            if i == s {
                self.done = true;
                break;
            }
            let limit = if i + 1 < s {
                self.current[i + 1]
            } else {
                self.universe
            };
            if self.current[i] + 1 < limit {
                self.current[i] += 1;
                for (j, slot) in self.current.iter_mut().take(i).enumerate() {
                    *slot = j;
                }
                break;
            }
            i += 1;
        }
        Some(out)
    }
}

/// All subsets of `0..universe` with at most `max_size` elements: by size,
/// and colex within each size.
pub fn fault_sets(universe: usize, max_size: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..=max_size.min(universe)).flat_map(move |s| Subsets::new(universe, s))
}
