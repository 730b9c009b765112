use core::cmp::Ordering;
use core::fmt;

/// Largest rank supported by the symbolic layer.
pub const MAX_RANK: usize = 8;

/// Number of variable slots: `a1..a8`, `h`, `q1..q8`.
pub const NUM_VARS: usize = 2 * MAX_RANK + 1;

const H_SLOT: usize = MAX_RANK;

/// A polynomial variable.
///
/// The fixed variable order is `a1 < a2 < … < a8 < h < q1 < … < q8`; the
/// slot layout does not depend on the rank of the root system in use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// Simple root `a_{i+1}` (zero-based index).
    A(usize),
    /// The equivariant parameter of the fiber scaling.
    H,
    /// Novikov variable `q_{i+1}` attached to simple root `i` (zero-based).
    Q(usize),
}

impl Var {
    pub fn slot(self) -> usize {
        match self {
            Var::A(i) => {
                assert!(i < MAX_RANK, "root variable index {i} out of range");
                i
            }
            Var::H => H_SLOT,
            Var::Q(i) => {
                assert!(i < MAX_RANK, "Novikov variable index {i} out of range");
                H_SLOT + 1 + i
            }
        }
    }

    pub fn from_slot(slot: usize) -> Var {
        match slot.cmp(&H_SLOT) {
            Ordering::Less => Var::A(slot),
            Ordering::Equal => Var::H,
            Ordering::Greater => Var::Q(slot - H_SLOT - 1),
        }
    }

    pub fn is_root_var(self) -> bool {
        matches!(self, Var::A(_))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::A(i) => write!(f, "a{}", i + 1),
            Var::H => f.write_str("h"),
            Var::Q(i) => write!(f, "q{}", i + 1),
        }
    }
}

/// Exponent vector over all variable slots.
///
/// Packed into one `u128`: seven bits per slot with `a1` lowest and the
/// total degree in the top byte, so integer order is the graded
/// lexicographic order (degree first, then `q8` down to `a1`). Total degree
/// is limited to 127, which bounds every exponent.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    key: u128,
}

const BITS: u32 = 7;
const FIELD: u128 = (1 << BITS) - 1;
const DEG_SHIFT: u32 = BITS * NUM_VARS as u32;

/// Largest total degree a monomial may carry.
pub const MAX_DEGREE: u32 = 127;

impl Monomial {
    pub const ONE: Monomial = Monomial { key: 0 };

    pub fn var(v: Var, e: u16) -> Monomial {
        Monomial::ONE.with_exponent(v, e)
    }

    pub fn from_slots(exps: [u16; NUM_VARS]) -> Monomial {
        let mut m = Monomial::ONE;
        for (slot, &e) in exps.iter().enumerate() {
            m = m.with_slot(slot, e);
        }
        m
    }

    pub fn exponent(&self, v: Var) -> u16 {
        self.exponent_at(v.slot())
    }

    pub fn exponent_at(&self, slot: usize) -> u16 {
        ((self.key >> (BITS * slot as u32)) & FIELD) as u16
    }

    pub fn with_exponent(self, v: Var, e: u16) -> Monomial {
        self.with_slot(v.slot(), e)
    }

    fn with_slot(self, slot: usize, e: u16) -> Monomial {
        let old = self.exponent_at(slot) as u32;
        let deg = self.degree() - old + e as u32;
        assert!(deg <= MAX_DEGREE, "monomial degree exceeds {MAX_DEGREE}");
        let shift = BITS * slot as u32;
        let mut key = self.key & !(FIELD << shift) & !(0xff << DEG_SHIFT);
        key |= (e as u128) << shift;
        key |= (deg as u128) << DEG_SHIFT;
        Monomial { key }
    }

    pub fn slots(&self) -> [u16; NUM_VARS] {
        let mut out = [0; NUM_VARS];
        for (slot, e) in out.iter_mut().enumerate() {
            *e = self.exponent_at(slot);
        }
        out
    }

    pub fn degree(&self) -> u32 {
        (self.key >> DEG_SHIFT) as u32
    }

    pub fn is_one(&self) -> bool {
        self.key == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert!(
            self.degree() + other.degree() <= MAX_DEGREE,
            "monomial degree exceeds {MAX_DEGREE}"
        );
        // No field can carry since each exponent is at most the degree.
        Monomial {
            key: self.key + other.key,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        (0..NUM_VARS).all(|s| self.exponent_at(s) <= other.exponent_at(s))
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            key: other.key - self.key,
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut m = Monomial::ONE;
        for s in 0..NUM_VARS {
            let e = self.exponent_at(s).min(other.exponent_at(s));
            if e > 0 {
                m = m.with_slot(s, e);
            }
        }
        m
    }

    /// Bit mask of slots with a nonzero exponent.
    pub fn support(&self) -> u32 {
        (0..NUM_VARS)
            .filter(|&s| self.exponent_at(s) > 0)
            .fold(0, |acc, s| acc | (1 << s))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (slot, e) in self.slots().into_iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "{}", Var::from_slot(slot))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}
