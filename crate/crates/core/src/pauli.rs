//! Qubit-level operators: bit strings, Pauli strings and Pauli polynomials.
//!
//! Qubit `i` is bit `i` of a [`BitString`]. Text forms of Pauli strings put
//! qubit 0 first (leftmost); codeword tables print the other way round.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::{c, PRUNE_TOL};

/// Arbitrary-width bit string, trailing zero words trimmed.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString(SmallVec<[u64; 2]>);

impl BitString {
    pub fn zero() -> Self {
        BitString(SmallVec::new())
    }

    pub fn from_u64(v: u64) -> Self {
        let mut b = BitString(SmallVec::from_slice(&[v]));
        b.trim();
        b
    }

    /// Bit string with `word` placed at qubit offset `offset`.
    pub fn from_word_at(word: u64, offset: usize) -> Self {
        let mut b = Self::zero();
        b.or_word_at(word, offset);
        b
    }

    fn trim(&mut self) {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }

    pub fn get(&self, i: usize) -> bool {
        self.0.get(i / 64).map_or(false, |w| (w >> (i % 64)) & 1 == 1)
    }

    pub fn set(&mut self, i: usize, v: bool) {
        let w = i / 64;
        if v {
            if self.0.len() <= w {
                self.0.resize(w + 1, 0);
            }
            self.0[w] |= 1 << (i % 64);
        } else if w < self.0.len() {
            self.0[w] &= !(1 << (i % 64));
            self.trim();
        }
    }

    pub fn flip(&mut self, i: usize) {
        let v = self.get(i);
        self.set(i, !v);
    }

    /// OR `word` into the bits starting at `offset`.
    pub fn or_word_at(&mut self, word: u64, offset: usize) {
        if word == 0 {
            return;
        }
        let (w, s) = (offset / 64, offset % 64);
        if self.0.len() < w + 2 {
            self.0.resize(w + 2, 0);
        }
        self.0[w] |= word << s;
        if s != 0 {
            self.0[w + 1] |= word >> (64 - s);
        }
        self.trim();
    }

    /// Bits `offset..offset+width` as an integer (`width <= 64`).
    pub fn extract(&self, offset: usize, width: usize) -> u64 {
        let mut out = 0u64;
        for i in 0..width {
            if self.get(offset + i) {
                out |= 1 << i;
            }
        }
        out
    }

    fn zip(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        let n = self.0.len().max(other.0.len());
        let mut v: SmallVec<[u64; 2]> = SmallVec::with_capacity(n);
        for i in 0..n {
            let a = self.0.get(i).copied().unwrap_or(0);
            let b = other.0.get(i).copied().unwrap_or(0);
            v.push(f(a, b));
        }
        let mut out = BitString(v);
        out.trim();
        out
    }

    pub fn xor(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a ^ b)
    }

    pub fn and(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & b)
    }

    pub fn or(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a | b)
    }

    pub fn and_not(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a & !b)
    }

    pub fn count_ones(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Index of the highest set bit plus one.
    pub fn bit_len(&self) -> usize {
        match self.0.last() {
            None => 0,
            Some(w) => (self.0.len() - 1) * 64 + (64 - w.leading_zeros() as usize),
        }
    }

    pub fn ones(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &w) in self.0.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let t = w.trailing_zeros() as usize;
                out.push(wi * 64 + t);
                w &= w - 1;
            }
        }
        out
    }

    pub fn to_usize(&self) -> usize {
        assert!(self.bit_len() <= usize::BITS as usize, "bit string too wide");
        self.0.first().copied().unwrap_or(0) as usize
    }

    pub fn from_usize(v: usize) -> Self {
        Self::from_u64(v as u64)
    }

    /// `width` characters, most significant bit first.
    pub fn to_msb_string(&self, width: usize) -> String {
        (0..width).rev().map(|i| if self.get(i) { '1' } else { '0' }).collect()
    }
}

impl fmt::Debug for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b{}", self.to_msb_string(self.bit_len().max(1)))
    }
}

/// Tensor product of single-qubit Paulis; Y where both `x` and `z` are set.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PauliString {
    pub x: BitString,
    pub z: BitString,
}

impl PauliString {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn single(q: usize, letter: char) -> Self {
        let mut p = Self::identity();
        p.set(q, letter);
        p
    }

    pub fn set(&mut self, q: usize, letter: char) {
        let (x, z) = match letter {
            'I' => (false, false),
            'X' => (true, false),
            'Y' => (true, true),
            'Z' => (false, true),
            _ => panic!("bad Pauli letter {letter}"),
        };
        self.x.set(q, x);
        self.z.set(q, z);
    }

    pub fn letter(&self, q: usize) -> char {
        match (self.x.get(q), self.z.get(q)) {
            (false, false) => 'I',
            (true, false) => 'X',
            (true, true) => 'Y',
            (false, true) => 'Z',
        }
    }

    pub fn support(&self) -> Vec<usize> {
        self.x.or(&self.z).ones()
    }

    pub fn weight(&self) -> usize {
        self.x.or(&self.z).count_ones() as usize
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn is_diagonal(&self) -> bool {
        self.x.is_zero()
    }

    /// Highest touched qubit plus one.
    pub fn width(&self) -> usize {
        self.x.bit_len().max(self.z.bit_len())
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        let a = self.x.and(&other.z).count_ones() + self.z.and(&other.x).count_ones();
        a % 2 == 0
    }

    /// `self * other = i^phase * result`.
    pub fn mul(&self, other: &Self) -> (Self, u32) {
        let (x1, z1, x2, z2) = (&self.x, &self.z, &other.x, &other.z);
        let px1 = x1.and_not(z1);
        let py1 = x1.and(z1);
        let pz1 = z1.and_not(x1);
        let px2 = x2.and_not(z2);
        let py2 = x2.and(z2);
        let pz2 = z2.and_not(x2);
        let pos = px1.and(&py2).count_ones() + py1.and(&pz2).count_ones() + pz1.and(&px2).count_ones();
        let neg = py1.and(&px2).count_ones() + pz1.and(&py2).count_ones() + px1.and(&pz2).count_ones();
        let phase = (4 + pos % 4 - neg % 4) % 4;
        (PauliString { x: x1.xor(x2), z: z1.xor(z2) }, phase)
    }

    /// `P |b> = amp |b'>`.
    pub fn apply(&self, b: &BitString) -> (BitString, Complex64) {
        let ny = self.x.and(&self.z).count_ones();
        let nz = self.z.and(b).count_ones();
        let mut amp = I_POW[(ny % 4) as usize];
        if nz % 2 == 1 {
            amp = -amp;
        }
        (b.xor(&self.x), amp)
    }

    /// Qubit 0 first.
    pub fn to_text(&self, n: usize) -> String {
        (0..n).map(|q| self.letter(q)).collect()
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut p = Self::identity();
        for (q, ch) in s.chars().enumerate() {
            if !"IXYZ".contains(ch) {
                return Err(Error::InvalidFactor(format!("bad Pauli letter `{ch}`")));
            }
            p.set(q, ch);
        }
        Ok(p)
    }
}

const I_POW: [Complex64; 4] = [
    Complex64::new(1.0, 0.0),
    Complex64::new(0.0, 1.0),
    Complex64::new(-1.0, 0.0),
    Complex64::new(0.0, -1.0),
];

pub(crate) fn i_pow(k: u32) -> Complex64 {
    I_POW[(k % 4) as usize]
}

/// Sum of Pauli strings with complex coefficients on `n_qubits` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliPoly {
    pub n_qubits: usize,
    terms: BTreeMap<PauliString, Complex64>,
}

impl PauliPoly {
    pub fn zero(n_qubits: usize) -> Self {
        PauliPoly { n_qubits, terms: BTreeMap::new() }
    }

    pub fn identity(n_qubits: usize) -> Self {
        let mut p = Self::zero(n_qubits);
        p.add_term(PauliString::identity(), c(1.0));
        p
    }

    pub fn from_terms(n_qubits: usize, terms: impl IntoIterator<Item = (PauliString, Complex64)>) -> Self {
        let mut p = Self::zero(n_qubits);
        for (s, v) in terms {
            p.add_term(s, v);
        }
        p.prune();
        p
    }

    /// Accumulate without pruning; call [`PauliPoly::prune`] when done.
    pub fn add_term(&mut self, s: PauliString, v: Complex64) {
        assert!(s.width() <= self.n_qubits, "Pauli string exceeds register");
        *self.terms.entry(s).or_insert(Complex64::new(0.0, 0.0)) += v;
    }

    /// Drop terms whose coefficient magnitude is below the prune tolerance.
    pub fn prune(&mut self) {
        self.terms.retain(|_, v| v.norm() >= PRUNE_TOL);
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PauliString, &Complex64)> {
        self.terms.iter()
    }

    pub fn coeff(&self, s: &PauliString) -> Complex64 {
        self.terms.get(s).copied().unwrap_or_default()
    }

    /// Terms other than the identity.
    pub fn non_identity_len(&self) -> usize {
        self.terms.keys().filter(|s| !s.is_identity()).count()
    }

    pub fn scale(&self, k: Complex64) -> Self {
        let mut p = Self::zero(self.n_qubits);
        for (s, v) in &self.terms {
            p.terms.insert(s.clone(), v * k);
        }
        p.prune();
        p
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut p = self.clone();
        p.n_qubits = self.n_qubits.max(other.n_qubits);
        for (s, v) in &other.terms {
            p.add_term(s.clone(), *v);
        }
        p.prune();
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut p = Self::zero(self.n_qubits.max(other.n_qubits));
        for (s1, v1) in &self.terms {
            for (s2, v2) in &other.terms {
                let (s, ph) = s1.mul(s2);
                p.add_term(s, v1 * v2 * i_pow(ph));
            }
        }
        p.prune();
        p
    }

    pub fn adjoint(&self) -> Self {
        let mut p = self.clone();
        for v in p.terms.values_mut() {
            *v = v.conj();
        }
        p
    }

    /// Max deviation of the coefficients from being real.
    pub fn hermiticity_error(&self) -> f64 {
        self.terms.values().map(|v| v.im.abs()).fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_error() <= tol
    }

    pub fn is_diagonal(&self) -> bool {
        self.terms.keys().all(|s| s.is_diagonal())
    }

    /// Image of basis state `b`: one entry per term, unmerged.
    pub fn apply_basis(&self, b: &BitString) -> Vec<(BitString, Complex64)> {
        self.terms
            .iter()
            .map(|(s, v)| {
                let (b2, amp) = s.apply(b);
                (b2, amp * v)
            })
            .collect()
    }

    /// `<b|H|b>` for a diagonal operator.
    pub fn diagonal_value(&self, b: &BitString) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (s, v) in &self.terms {
            if s.is_diagonal() {
                if s.z.and(b).count_ones() % 2 == 1 {
                    acc -= v;
                } else {
                    acc += v;
                }
            }
        }
        acc
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let keys: std::collections::BTreeSet<_> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().all(|k| (self.coeff(k) - other.coeff(k)).norm() <= tol)
    }

    pub fn to_json(&self) -> PauliPolyJson {
        PauliPolyJson {
            schema_version: crate::SCHEMA_VERSION,
            n_qubits: self.n_qubits,
            qubit_order: "q0_first".into(),
            terms: self
                .terms
                .iter()
                .map(|(s, v)| PauliTermJson { coeff: [v.re, v.im], string: s.to_text(self.n_qubits) })
                .collect(),
        }
    }

    pub fn from_json(j: &PauliPolyJson) -> Result<Self> {
        let mut p = Self::zero(j.n_qubits);
        for t in &j.terms {
            if t.string.chars().count() != j.n_qubits {
                return Err(Error::InvalidFactor(format!("Pauli string `{}` has wrong length", t.string)));
            }
            p.add_term(PauliString::parse(&t.string)?, Complex64::new(t.coeff[0], t.coeff[1]));
        }
        Ok(p)
    }
}

impl fmt::Display for PauliPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, v)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if v.im == 0.0 {
                write!(f, "{}*{}", v.re, s.to_text(self.n_qubits))?;
            } else {
                write!(f, "({}{:+}i)*{}", v.re, v.im, s.to_text(self.n_qubits))?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PauliPolyJson {
    #[serde(default = "crate::default_schema_version")]
    pub schema_version: u32,
    pub n_qubits: usize,
    #[serde(default = "q0_first")]
    pub qubit_order: String,
    pub terms: Vec<PauliTermJson>,
}

fn q0_first() -> String {
    "q0_first".into()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PauliTermJson {
    pub coeff: [f64; 2],
    pub string: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_products() {
        let x = PauliString::single(0, 'X');
        let y = PauliString::single(0, 'Y');
        let z = PauliString::single(0, 'Z');
        assert_eq!(x.mul(&y), (z.clone(), 1));
        assert_eq!(y.mul(&x), (z.clone(), 3));
        assert_eq!(z.mul(&x), (y.clone(), 1));
        assert_eq!(y.mul(&z), (x.clone(), 1));
        assert_eq!(x.mul(&x), (PauliString::identity(), 0));
    }

    #[test]
    fn y_action() {
        let y = PauliString::single(0, 'Y');
        let (b, a) = y.apply(&BitString::zero());
        assert_eq!(b, BitString::from_u64(1));
        assert_eq!(a, Complex64::new(0.0, 1.0));
        let (b, a) = y.apply(&BitString::from_u64(1));
        assert!(b.is_zero());
        assert_eq!(a, Complex64::new(0.0, -1.0));
    }

    #[test]
    fn wide_bits() {
        let mut b = BitString::from_word_at(0b101, 62);
        assert!(b.get(62) && !b.get(63) && b.get(64));
        assert_eq!(b.ones(), vec![62, 64]);
        b.set(64, false);
        assert_eq!(b.bit_len(), 63);
        assert_eq!(b.extract(61, 3), 0b010);
    }
}
