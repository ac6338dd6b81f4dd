//! Octonion basis multiplication from an oriented Fano plane, plus exact
//! rational octonion arithmetic and checks of the algebra's laws.
//!
//! The basis is `{u, f0, ..., f6}`: `u` is the real unit and `f_i` is the
//! imaginary unit attached to Fano point `i`. Each directed line `a -> b -> c`
//! contributes `f_a f_b = f_c` and its cyclic rotations; the remaining rules
//! (`f_a² = -u`, anticommutativity of distinct imaginary units) are the
//! standard octonion ones.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::form::CANONICAL_ROWS;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OctonionError {
    #[error("invalid orientation: {0}")]
    InvalidOrientation(String),
    #[error("unknown basis label {0:?}: expected u or f0..f6")]
    BadBasisLabel(String),
}

/// One of the eight basis elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    Unit,
    Imag(u8),
}

impl Basis {
    pub const ALL: [Basis; 8] = [
        Basis::Unit,
        Basis::Imag(0),
        Basis::Imag(1),
        Basis::Imag(2),
        Basis::Imag(3),
        Basis::Imag(4),
        Basis::Imag(5),
        Basis::Imag(6),
    ];

    /// Position in `{u, f0..f6}`.
    pub fn index(self) -> usize {
        match self {
            Basis::Unit => 0,
            Basis::Imag(i) => i as usize + 1,
        }
    }

    pub fn from_index(i: usize) -> Basis {
        Basis::ALL[i]
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::Unit => write!(f, "u"),
            Basis::Imag(i) => write!(f, "f{i}"),
        }
    }
}

impl FromStr for Basis {
    type Err = OctonionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || OctonionError::BadBasisLabel(s.to_string());
        match s {
            "u" => Ok(Basis::Unit),
            _ => {
                let digits = s.strip_prefix('f').ok_or_else(bad)?;
                match digits.parse::<u8>() {
                    Ok(i) if i < 7 && digits.len() == 1 => Ok(Basis::Imag(i)),
                    _ => Err(bad()),
                }
            }
        }
    }
}

/// `±basis`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedBasis {
    pub negative: bool,
    pub basis: Basis,
}

impl SignedBasis {
    pub fn pos(basis: Basis) -> Self {
        SignedBasis {
            negative: false,
            basis,
        }
    }

    pub fn neg(basis: Basis) -> Self {
        SignedBasis {
            negative: true,
            basis,
        }
    }

    pub fn negated(self) -> Self {
        SignedBasis {
            negative: !self.negative,
            basis: self.basis,
        }
    }

    fn sign(self) -> i64 {
        if self.negative {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for SignedBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.negative { '-' } else { '+' };
        write!(f, "{sign}{}", self.basis)
    }
}

/// Seven directed 3-cycles whose underlying triples are the Fano lines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrientedFano {
    cycles: Vec<[usize; 3]>,
}

impl OrientedFano {
    pub fn new(cycles: Vec<[usize; 3]>) -> Result<Self, OctonionError> {
        let invalid = |msg: String| Err(OctonionError::InvalidOrientation(msg));
        if cycles.len() != 7 {
            return invalid(format!("expected 7 cycles, got {}", cycles.len()));
        }
        let mut pairs = BTreeSet::new();
        let mut triples = BTreeSet::new();
        for cycle in &cycles {
            if let Some(p) = cycle.iter().find(|&&p| p > 6) {
                return invalid(format!("label {p} in cycle {cycle:?} is not a Fano point"));
            }
            for i in 0..3 {
                let (a, b) = (cycle[i], cycle[(i + 1) % 3]);
                if a == b {
                    return invalid(format!("cycle {cycle:?} repeats point {a}"));
                }
                if !pairs.insert((a.min(b), a.max(b))) {
                    return invalid(format!("pair {{{a},{b}}} occurs in more than one cycle"));
                }
            }
            let mut sorted = *cycle;
            sorted.sort_unstable();
            triples.insert(sorted);
        }
        let fano: BTreeSet<[usize; 3]> = CANONICAL_ROWS
            .iter()
            .map(|row| {
                let mut s = *row;
                s.sort_unstable();
                s
            })
            .collect();
        if triples != fano {
            return invalid("cycles do not cover the Fano lines".to_string());
        }
        Ok(OrientedFano { cycles })
    }

    pub fn cycles(&self) -> &[[usize; 3]] {
        &self.cycles
    }

    /// All 21 directed edges `a -> b` of the cycles, in listing order.
    pub fn directed_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cycles
            .iter()
            .flat_map(|c| (0..3).map(move |i| (c[i], c[(i + 1) % 3])))
    }
}

/// The orientation used for the octonion-ordered form.
pub fn paper_orientation() -> OrientedFano {
    OrientedFano::new(vec![
        [3, 1, 0],
        [0, 2, 6],
        [0, 5, 4],
        [3, 4, 6],
        [2, 5, 3],
        [2, 1, 4],
        [1, 5, 6],
    ])
    .expect("listed cycles are a valid orientation")
}

/// Signed products of basis elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OctonionTable {
    orientation: OrientedFano,
    products: [[SignedBasis; 8]; 8],
}

pub fn build_table(o: &OrientedFano) -> Result<OctonionTable, OctonionError> {
    let mut products: [[Option<SignedBasis>; 8]; 8] = [[None; 8]; 8];
    let mut set = |a: Basis, b: Basis, v: SignedBasis| -> Result<(), OctonionError> {
        let slot = &mut products[a.index()][b.index()];
        if slot.is_some() {
            return Err(OctonionError::InvalidOrientation(format!(
                "product {a}·{b} assigned twice"
            )));
        }
        *slot = Some(v);
        Ok(())
    };
    for b in Basis::ALL {
        set(Basis::Unit, b, SignedBasis::pos(b))?;
        if b != Basis::Unit {
            set(b, Basis::Unit, SignedBasis::pos(b))?;
            set(b, b, SignedBasis::neg(Basis::Unit))?;
        }
    }
    for cycle in o.cycles() {
        for i in 0..3 {
            let a = Basis::Imag(cycle[i] as u8);
            let b = Basis::Imag(cycle[(i + 1) % 3] as u8);
            let c = Basis::Imag(cycle[(i + 2) % 3] as u8);
            set(a, b, SignedBasis::pos(c))?;
            set(b, a, SignedBasis::neg(c))?;
        }
    }
    let mut out = [[SignedBasis::pos(Basis::Unit); 8]; 8];
    for (i, row) in products.iter().enumerate() {
        for (j, entry) in row.iter().enumerate() {
            out[i][j] = entry.ok_or_else(|| {
                OctonionError::InvalidOrientation(format!(
                    "product {}·{} undefined",
                    Basis::from_index(i),
                    Basis::from_index(j)
                ))
            })?;
        }
    }
    Ok(OctonionTable {
        orientation: o.clone(),
        products: out,
    })
}

/// Rendered table: row/column labels and signed entries.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableDocument {
    pub basis: Vec<String>,
    pub products: Vec<Vec<String>>,
}

impl OctonionTable {
    pub fn orientation(&self) -> &OrientedFano {
        &self.orientation
    }

    pub fn basis_product(&self, a: Basis, b: Basis) -> SignedBasis {
        self.products[a.index()][b.index()]
    }

    fn signed_product(&self, a: SignedBasis, b: SignedBasis) -> SignedBasis {
        let p = self.basis_product(a.basis, b.basis);
        if a.negative != b.negative {
            p.negated()
        } else {
            p
        }
    }

    pub fn mul(&self, x: &Octonion, y: &Octonion) -> Octonion {
        let mut out = Octonion::zero();
        for (i, xi) in x.coeffs.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coeffs.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let p = self.products[i][j];
                let term = xi * yj;
                let slot = &mut out.coeffs[p.basis.index()];
                if p.negative {
                    *slot -= term;
                } else {
                    *slot += term;
                }
            }
        }
        out
    }

    pub fn to_document(&self) -> TableDocument {
        TableDocument {
            basis: Basis::ALL.iter().map(|b| b.to_string()).collect(),
            products: self
                .products
                .iter()
                .map(|row| row.iter().map(|p| p.to_string()).collect())
                .collect(),
        }
    }

    /// Fixed-width text grid with row and column headers.
    pub fn render_text(&self) -> String {
        let mut out = String::from("  ·  |");
        for b in Basis::ALL {
            out.push_str(&format!(" {:>3}", b.to_string()));
        }
        out.push('\n');
        out.push_str(&"-".repeat(6 + 4 * 8));
        out.push('\n');
        for a in Basis::ALL {
            out.push_str(&format!(" {:>3} |", a.to_string()));
            for b in Basis::ALL {
                out.push_str(&format!(" {:>3}", self.basis_product(a, b).to_string()));
            }
            out.push('\n');
        }
        out
    }
}

/// `c_u u + c_0 f0 + ... + c_6 f6` with exact rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Octonion {
    coeffs: [BigRational; 8],
}

impl Octonion {
    pub fn zero() -> Self {
        Octonion {
            coeffs: std::array::from_fn(|_| BigRational::zero()),
        }
    }

    pub fn basis(b: Basis) -> Self {
        let mut out = Self::zero();
        out.coeffs[b.index()] = BigRational::one();
        out
    }

    pub fn from_coeffs(coeffs: [BigRational; 8]) -> Self {
        Octonion { coeffs }
    }

    pub fn from_ints(coeffs: [i64; 8]) -> Self {
        Octonion {
            coeffs: coeffs.map(|c| BigRational::from_integer(BigInt::from(c))),
        }
    }

    pub fn coeffs(&self) -> &[BigRational; 8] {
        &self.coeffs
    }

    pub fn conj(&self) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut().skip(1) {
            *c = -c.clone();
        }
        out
    }

    pub fn norm2(&self) -> BigRational {
        self.coeffs
            .iter()
            .fold(BigRational::zero(), |acc, c| acc + c * c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn sub(&self, other: &Octonion) -> Octonion {
        Octonion {
            coeffs: std::array::from_fn(|i| &self.coeffs[i] - &other.coeffs[i]),
        }
    }
}

impl fmt::Display for Octonion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            write!(f, "{}{}", c.abs(), Basis::from_index(i))?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub fn oct_mul(x: &Octonion, y: &Octonion, t: &OctonionTable) -> Octonion {
    t.mul(x, y)
}

pub fn oct_conj(x: &Octonion) -> Octonion {
    x.conj()
}

pub fn oct_norm2(x: &Octonion) -> BigRational {
    x.norm2()
}

/// Default number of random rational samples used by [`algebra_report`].
pub const DEFAULT_SAMPLES: usize = 1000;
/// Default seed for the sampler.
pub const DEFAULT_SEED: u64 = 0x0c70_2024;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraReport {
    pub alternative: bool,
    pub associative: bool,
    pub commutative: bool,
    pub norm_multiplicative: bool,
    pub basis_identities_checked: usize,
    pub samples: usize,
    pub seed: u64,
    pub witnesses: AlgebraWitnesses,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct AlgebraWitnesses {
    /// `(x, y, z)` with `(xy)z != x(yz)`.
    pub associative: Option<Vec<String>>,
    /// `(x, y)` with `xy != yx`.
    pub commutative: Option<Vec<String>>,
    pub alternative: Option<Vec<String>>,
    pub norm_multiplicative: Option<Vec<String>>,
}

/// Checks associativity, commutativity, alternativity and multiplicativity of
/// the norm.
///
/// Alternativity is checked on every basis pair, in linearized form on all
/// 512 basis triples, and on `samples` random rational pairs; the norm is
/// checked on the same samples. The commutativity witness is the first
/// directed edge of the orientation whose two products differ.
pub fn algebra_report(t: &OctonionTable, samples: usize, seed: u64) -> AlgebraReport {
    let mut witnesses = AlgebraWitnesses::default();
    let mut checked = 0;

    'assoc: for a in Basis::ALL {
        for b in Basis::ALL {
            for c in Basis::ALL {
                if associator_basis(t, a, b, c) != [0; 8] {
                    witnesses.associative = Some(vec![a.to_string(), b.to_string(), c.to_string()]);
                    break 'assoc;
                }
            }
        }
    }

    for (a, b) in t.orientation().directed_edges() {
        let (a, b) = (Basis::Imag(a as u8), Basis::Imag(b as u8));
        if t.basis_product(a, b) != t.basis_product(b, a) {
            witnesses.commutative = Some(vec![a.to_string(), b.to_string()]);
            break;
        }
    }
    if witnesses.commutative.is_none() {
        'comm: for a in Basis::ALL {
            for b in Basis::ALL {
                if t.basis_product(a, b) != t.basis_product(b, a) {
                    witnesses.commutative = Some(vec![a.to_string(), b.to_string()]);
                    break 'comm;
                }
            }
        }
    }

    // x(xy) = (xx)y and (yx)x = y(xx) on basis pairs.
    'pairs: for x in Basis::ALL {
        for y in Basis::ALL {
            checked += 2;
            let (sx, sy) = (SignedBasis::pos(x), SignedBasis::pos(y));
            let left = t.signed_product(sx, t.signed_product(sx, sy))
                == t.signed_product(t.signed_product(sx, sx), sy);
            let right = t.signed_product(t.signed_product(sy, sx), sx)
                == t.signed_product(sy, t.signed_product(sx, sx));
            if !(left && right) {
                let side = if left { "right" } else { "left" };
                witnesses.alternative = Some(vec![side.to_string(), x.to_string(), y.to_string()]);
                break 'pairs;
            }
        }
    }

    // Linearized: [a,b,c] + [b,a,c] = 0 and [a,b,c] + [a,c,b] = 0.
    if witnesses.alternative.is_none() {
        'triples: for a in Basis::ALL {
            for b in Basis::ALL {
                for c in Basis::ALL {
                    checked += 2;
                    let abc = associator_basis(t, a, b, c);
                    let bac = associator_basis(t, b, a, c);
                    let acb = associator_basis(t, a, c, b);
                    let left = (0..8).all(|i| abc[i] + bac[i] == 0);
                    let right = (0..8).all(|i| abc[i] + acb[i] == 0);
                    if !(left && right) {
                        let side = if left { "right" } else { "left" };
                        witnesses.alternative = Some(vec![
                            side.to_string(),
                            a.to_string(),
                            b.to_string(),
                            c.to_string(),
                        ]);
                        break 'triples;
                    }
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let x = random_octonion(&mut rng);
        let y = random_octonion(&mut rng);
        if witnesses.alternative.is_none() {
            let xx = t.mul(&x, &x);
            let left = t.mul(&x, &t.mul(&x, &y)) == t.mul(&xx, &y);
            let right = t.mul(&t.mul(&y, &x), &x) == t.mul(&y, &xx);
            if !(left && right) {
                witnesses.alternative = Some(vec![
                    if left { "right" } else { "left" }.to_string(),
                    x.to_string(),
                    y.to_string(),
                ]);
            }
        }
        if witnesses.norm_multiplicative.is_none() && t.mul(&x, &y).norm2() != x.norm2() * y.norm2()
        {
            witnesses.norm_multiplicative = Some(vec![x.to_string(), y.to_string()]);
        }
    }

    AlgebraReport {
        alternative: witnesses.alternative.is_none(),
        associative: witnesses.associative.is_none(),
        commutative: witnesses.commutative.is_none(),
        norm_multiplicative: witnesses.norm_multiplicative.is_none(),
        basis_identities_checked: checked,
        samples,
        seed,
        witnesses,
    }
}

/// `(ab)c - a(bc)` as an integer coefficient vector.
fn associator_basis(t: &OctonionTable, a: Basis, b: Basis, c: Basis) -> [i64; 8] {
    let (a, b, c) = (
        SignedBasis::pos(a),
        SignedBasis::pos(b),
        SignedBasis::pos(c),
    );
    let left = t.signed_product(t.signed_product(a, b), c);
    let right = t.signed_product(a, t.signed_product(b, c));
    let mut out = [0i64; 8];
    out[left.basis.index()] += left.sign();
    out[right.basis.index()] -= right.sign();
    out
}

fn random_octonion(rng: &mut ChaCha8Rng) -> Octonion {
    Octonion {
        coeffs: std::array::from_fn(|_| {
            let num: i64 = rng.gen_range(-9..=9);
            let den: i64 = rng.gen_range(1..=9);
            BigRational::new(BigInt::from(num), BigInt::from(den))
        }),
    }
}
