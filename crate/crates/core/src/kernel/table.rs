use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Carrier elements are dense integers `0..q`.
pub type Elem = u8;

/// Largest supported carrier size.
pub const MAX_CARRIER: usize = Elem::MAX as usize + 1;

/// A finite carrier `{0, 1, ..., q - 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct Carrier(usize);

impl Carrier {
    pub fn new(q: usize) -> Result<Self> {
        if q == 0 || q > MAX_CARRIER {
            return Err(Error::InvalidCarrier {
                got: q,
                max: MAX_CARRIER,
            });
        }
        Ok(Carrier(q))
    }

    pub fn size(self) -> usize {
        self.0
    }

    pub fn elements(self) -> impl Iterator<Item = Elem> {
        (0..self.0).map(|a| a as Elem)
    }

    pub fn check(self, element: usize) -> Result<Elem> {
        if element < self.0 {
            Ok(element as Elem)
        } else {
            Err(Error::InvalidElement {
                element,
                q: self.0,
            })
        }
    }
}

impl TryFrom<usize> for Carrier {
    type Error = Error;
    fn try_from(q: usize) -> Result<Self> {
        Carrier::new(q)
    }
}

impl From<Carrier> for usize {
    fn from(c: Carrier) -> usize {
        c.0
    }
}

/// `q^n`, or an error when it does not fit in memory-addressable sizes.
pub(crate) fn checked_power(q: usize, n: usize) -> Result<usize> {
    u32::try_from(n)
        .ok()
        .and_then(|n| q.checked_pow(n))
        .ok_or_else(|| Error::TooLarge(format!("{q}^{n} overflows")))
}

/// Row-major index of `point` in `{0..q}^n`; the first coordinate is most significant.
pub fn tuple_index(point: &[Elem], q: usize) -> Result<usize> {
    let mut index = 0usize;
    for &x in point {
        if x as usize >= q {
            return Err(Error::InvalidElement {
                element: x as usize,
                q,
            });
        }
        index = index
            .checked_mul(q)
            .and_then(|i| i.checked_add(x as usize))
            .ok_or_else(|| Error::TooLarge("tuple index overflows".into()))?;
    }
    Ok(index)
}

/// Inverse of [`tuple_index`] for tuples of length `n`.
pub fn decode_index(mut index: usize, q: usize, n: usize) -> Vec<Elem> {
    let mut point = vec![0; n];
    for slot in point.iter_mut().rev() {
        *slot = (index % q) as Elem;
        index /= q;
    }
    point
}

/// Odometer over `{0..q}^n` in tuple-index order.
#[derive(Clone, Debug)]
pub struct Points {
    q: Elem,
    current: Option<Vec<Elem>>,
}

impl Points {
    pub fn new(q: usize, n: usize) -> Self {
        Points {
            q: (q - 1) as Elem,
            current: if q == 0 { None } else { Some(vec![0; n]) },
        }
    }
}

impl Iterator for Points {
    type Item = Vec<Elem>;

    fn next(&mut self) -> Option<Vec<Elem>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().unwrap();
        let mut k = cur.len();
        loop {
            if k == 0 {
                self.current = None;
                break;
            }
            k -= 1;
            if cur[k] < self.q {
                cur[k] += 1;
                break;
            }
            cur[k] = 0;
        }
        Some(out)
    }
}

/// An `n`-ary operation on `{0..q}` stored as a flat table in tuple-index order.
///
/// Two operations are the same function exactly when their tables are equal,
/// and the derived ordering is lexicographic on the entries once `q` and the
/// arity agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawTable")]
pub struct OpTable {
    q: usize,
    arity: usize,
    entries: Vec<Elem>,
}

#[derive(Deserialize)]
struct RawTable {
    q: usize,
    arity: usize,
    entries: Vec<usize>,
}

impl TryFrom<RawTable> for OpTable {
    type Error = Error;
    fn try_from(raw: RawTable) -> Result<Self> {
        let carrier = Carrier::new(raw.q)?;
        let entries = raw
            .entries
            .into_iter()
            .map(|e| carrier.check(e))
            .collect::<Result<Vec<_>>>()?;
        OpTable::new(raw.q, raw.arity, entries)
    }
}

impl OpTable {
    pub fn new(q: usize, arity: usize, entries: Vec<Elem>) -> Result<Self> {
        Carrier::new(q)?;
        let expected = checked_power(q, arity)?;
        if entries.len() != expected {
            return Err(Error::TableLength {
                q,
                arity,
                expected,
                got: entries.len(),
            });
        }
        if let Some(&bad) = entries.iter().find(|&&e| e as usize >= q) {
            return Err(Error::InvalidElement {
                element: bad as usize,
                q,
            });
        }
        Ok(OpTable { q, arity, entries })
    }

    /// Caller guarantees the length and range invariants.
    pub(crate) fn from_raw(q: usize, arity: usize, entries: Vec<Elem>) -> Self {
        debug_assert_eq!(entries.len(), q.pow(arity as u32));
        OpTable { q, arity, entries }
    }

    pub fn from_fn(q: usize, arity: usize, mut f: impl FnMut(&[Elem]) -> Elem) -> Result<Self> {
        Carrier::new(q)?;
        checked_power(q, arity)?;
        let entries = Points::new(q, arity).map(|p| f(&p)).collect();
        OpTable::new(q, arity, entries)
    }

    /// The projection `e_i^n`, with `i` counted from 1.
    pub fn projection(q: usize, arity: usize, i: usize) -> Result<Self> {
        if i == 0 || i > arity {
            return Err(Error::VariableOutOfRange {
                index: i,
                available: arity,
            });
        }
        OpTable::from_fn(q, arity, |p| p[i - 1])
    }

    pub fn constant(q: usize, arity: usize, value: Elem) -> Result<Self> {
        Carrier::new(q)?.check(value as usize)?;
        OpTable::from_fn(q, arity, |_| value)
    }

    pub fn identity(q: usize) -> Result<Self> {
        OpTable::projection(q, 1, 1)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Elem> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn points(&self) -> Points {
        Points::new(self.q, self.arity)
    }

    /// `f(point)`.
    pub fn eval(&self, point: &[Elem]) -> Result<Elem> {
        if point.len() != self.arity {
            return Err(Error::Arity {
                expected: self.arity,
                got: point.len(),
            });
        }
        Ok(self.entries[tuple_index(point, self.q)?])
    }

    #[inline]
    pub fn at(&self, index: usize) -> Elem {
        self.entries[index]
    }

    /// Pointwise superposition `x ↦ outer(inner_1(x), ..., inner_m(x))`.
    pub fn compose(outer: &OpTable, inners: &[OpTable]) -> Result<OpTable> {
        if inners.len() != outer.arity {
            return Err(Error::Arity {
                expected: outer.arity,
                got: inners.len(),
            });
        }
        let Some(first) = inners.first() else {
            return Ok(outer.clone());
        };
        let n = first.arity;
        for inner in inners {
            if inner.q != outer.q {
                return Err(Error::CarrierMismatch {
                    left: outer.q,
                    right: inner.q,
                });
            }
            if inner.arity != n {
                return Err(Error::Arity {
                    expected: n,
                    got: inner.arity,
                });
            }
        }
        let refs: Vec<&[Elem]> = inners.iter().map(|t| t.entries()).collect();
        Ok(OpTable::from_raw(outer.q, n, outer.superpose(&refs)))
    }

    /// Applies `self` pointwise to argument columns of equal length. No checks.
    pub(crate) fn superpose(&self, args: &[&[Elem]]) -> Vec<Elem> {
        let q = self.q;
        match args {
            [] => vec![self.entries[0]],
            [a] => a.iter().map(|&x| self.entries[x as usize]).collect(),
            [a, b] => a
                .iter()
                .zip(b.iter())
                .map(|(&x, &y)| self.entries[x as usize * q + y as usize])
                .collect(),
            _ => (0..args[0].len())
                .map(|k| {
                    let idx = args.iter().fold(0, |acc, col| acc * q + col[k] as usize);
                    self.entries[idx]
                })
                .collect(),
        }
    }

    /// Fixes variable `var` (1-based) to `value` and drops that coordinate.
    pub fn slice(&self, var: usize, value: Elem) -> Result<OpTable> {
        if var == 0 || var > self.arity {
            return Err(Error::VariableOutOfRange {
                index: var,
                available: self.arity,
            });
        }
        Carrier::new(self.q)?.check(value as usize)?;
        let n = self.arity - 1;
        let entries = Points::new(self.q, n)
            .map(|p| {
                let mut full = p;
                full.insert(var - 1, value);
                self.entries[tuple_index(&full, self.q).unwrap()]
            })
            .collect();
        Ok(OpTable::from_raw(self.q, n, entries))
    }
}
