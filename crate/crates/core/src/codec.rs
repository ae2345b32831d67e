//! Packing of vectors in GF(q)^n into integers (coordinate `i` is the base-q digit `i`).

use crate::field::Fe;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Codec {
    q: u64,
    n: usize,
    // when q is a power of two, digits are bit fields of this width
    shift: Option<u32>,
}

impl Codec {
    pub fn new(q: u32, n: usize) -> Self {
        let shift = q.is_power_of_two().then(|| q.trailing_zeros());
        Self {
            q: q as u64,
            n,
            shift,
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Number of vectors, or `None` if it overflows `u64`.
    pub fn size(&self) -> Option<u64> {
        self.q.checked_pow(self.n as u32)
    }

    #[inline]
    pub fn encode(&self, v: &[Fe]) -> u64 {
        match self.shift {
            Some(s) => v[..self.n]
                .iter()
                .rev()
                .fold(0u64, |acc, x| (acc << s) | x.0 as u64),
            None => v[..self.n]
                .iter()
                .rev()
                .fold(0u64, |acc, x| acc * self.q + x.0 as u64),
        }
    }

    #[inline]
    pub fn decode(&self, mut code: u64, out: &mut [Fe]) {
        match self.shift {
            Some(s) => {
                let mask = (1u64 << s) - 1;
                for slot in out[..self.n].iter_mut() {
                    *slot = Fe((code & mask) as u16);
                    code >>= s;
                }
            }
            None => {
                for slot in out[..self.n].iter_mut() {
                    *slot = Fe((code % self.q) as u16);
                    code /= self.q;
                }
            }
        }
    }

    pub fn decode_vec(&self, code: u64) -> alloc::vec::Vec<Fe> {
        let mut v = alloc::vec![Fe::ZERO; self.n];
        self.decode(code, &mut v);
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for (q, n) in [(2u32, 10usize), (3, 5), (4, 4), (9, 3)] {
            let c = Codec::new(q, n);
            let mut buf = [Fe::ZERO; 16];
            for code in 0..c.size().unwrap() {
                c.decode(code, &mut buf);
                assert_eq!(c.encode(&buf), code);
            }
        }
    }
}
