//! Dense statevector engine: graph states built by CZ circuits, reduced
//! purities, local unitaries, and seeded random states.
//!
//! Index convention: qubit 1 (1-based, as in all text formats) is the most
//! significant bit of the amplitude index. Internally qubit `q` (0-based)
//! owns index bit `n-1-q`, so for n=3 the basis ket |q1 q2 q3> = |011>
//! sits at index 0b011 = 3, and qubit 0 alone selects indices 4..=7.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::subset::{full_mask, SubsetMask};

/// Largest qubit count of the dense engine (2^14 amplitudes).
pub const MAX_DENSE_QUBITS: usize = 14;
/// Largest subset size for which a reduced density matrix is materialized.
pub const MAX_REDUCED_QUBITS: usize = 10;
/// Largest qubit count for seeded random states.
pub const MAX_RANDOM_QUBITS: usize = 12;

const NORM_TOL: f64 = 1e-10;
const UNITARY_TOL: f64 = 1e-10;

/// Index bit owned by 0-based qubit `q` in an `n`-qubit register.
fn index_bit(n: usize, q: usize) -> u64 {
    1 << (n - 1 - q)
}

/// Bit positions (in index space) of the qubits in `s`.
fn index_mask(n: usize, s: SubsetMask) -> u64 {
    let mut out = 0u64;
    let mut rest = s.bits() & full_mask(n);
    while rest != 0 {
        let q = rest.trailing_zeros() as usize;
        out |= index_bit(n, q);
        rest &= rest - 1;
    }
    out
}

use crate::graph::compress_bits;

/// Normalized pure state on `n` qubits, 2^n dense complex amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n: usize,
    amps: Vec<Complex64>,
}

impl PureState {
    /// Wrap amplitudes, checking length and normalization (1e-10).
    pub fn new(n: usize, amps: Vec<Complex64>) -> Result<PureState> {
        if n == 0 || n > MAX_DENSE_QUBITS {
            return Err(Error::Overflow(format!(
                "dense engine supports 1..={MAX_DENSE_QUBITS} qubits, got {n}"
            )));
        }
        if amps.len() != 1 << n {
            return Err(Error::LengthMismatch {
                n,
                m: 0,
                want: 1 << n,
                got: amps.len(),
            });
        }
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(PureState { n, amps })
    }

    pub fn qubit_count(&self) -> usize {
        self.n
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amp(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Controlled-Z between qubits `a` and `b`: negates every amplitude
    /// whose index has both qubit bits set. Involution, symmetric in (a,b).
    pub fn apply_cz(&self, a: usize, b: usize) -> Result<PureState> {
        if a >= self.n {
            return Err(Error::VertexOutOfRange {
                label: a + 1,
                n: self.n,
            });
        }
        if b >= self.n {
            return Err(Error::VertexOutOfRange {
                label: b + 1,
                n: self.n,
            });
        }
        if a == b {
            return Err(Error::SelfLoop(a + 1));
        }
        let mask = index_bit(self.n, a) | index_bit(self.n, b);
        let mut amps = self.amps.clone();
        for (k, amp) in amps.iter_mut().enumerate() {
            if k as u64 & mask == mask {
                *amp = -*amp;
            }
        }
        Ok(PureState { n: self.n, amps })
    }

    /// Apply a 2x2 unitary to qubit `q`.
    pub fn apply_local_unitary(&self, q: usize, u: &LocalUnitary) -> Result<PureState> {
        if q >= self.n {
            return Err(Error::VertexOutOfRange {
                label: q + 1,
                n: self.n,
            });
        }
        let bit = index_bit(self.n, q);
        let mut amps = self.amps.clone();
        for k in 0..amps.len() {
            if k as u64 & bit == 0 {
                let k1 = k | bit as usize;
                let a0 = self.amps[k];
                let a1 = self.amps[k1];
                amps[k] = u.m[0][0] * a0 + u.m[0][1] * a1;
                amps[k1] = u.m[1][0] * a0 + u.m[1][1] * a1;
            }
        }
        Ok(PureState { n: self.n, amps })
    }

    /// Purity Tr[rho_S^2] of the marginal on `s`, via the Gram matrix of the
    /// amplitude matrix reshaped to 2^|S| x 2^(n-|S|) (built on the smaller
    /// side, so any subset size up to n is tractable).
    pub fn purity(&self, s: SubsetMask) -> f64 {
        let row_sel = index_mask(self.n, s);
        let col_sel = full_mask(self.n) ^ row_sel;
        let rdim = 1usize << row_sel.count_ones();
        let cdim = 1usize << col_sel.count_ones();
        if rdim == 1 || cdim == 1 {
            return 1.0;
        }
        let mut m = vec![Complex64::ZERO; rdim * cdim];
        for (k, amp) in self.amps.iter().enumerate() {
            let r = compress_bits(k as u64, row_sel) as usize;
            let c = compress_bits(k as u64, col_sel) as usize;
            m[r * cdim + c] = *amp;
        }
        // Tr[(M M^H)^2] = Tr[(M^H M)^2]; accumulate over the smaller Gram.
        if rdim <= cdim {
            gram_frobenius_sqr(&m, rdim, cdim)
        } else {
            let mut mt = vec![Complex64::ZERO; rdim * cdim];
            for r in 0..rdim {
                for c in 0..cdim {
                    mt[c * rdim + r] = m[r * cdim + c].conj();
                }
            }
            gram_frobenius_sqr(&mt, cdim, rdim)
        }
    }

    /// Reduced density matrix of the marginal on `s`, row-major.
    /// Basis order on S follows the global convention: the smallest qubit of
    /// S is the most significant bit of the row index.
    pub fn reduced_density(&self, s: SubsetMask) -> Result<Vec<Vec<Complex64>>> {
        let row_sel = index_mask(self.n, s);
        let k = row_sel.count_ones() as usize;
        if k > MAX_REDUCED_QUBITS {
            return Err(Error::Overflow(format!(
                "reduced density matrices are materialized for at most {MAX_REDUCED_QUBITS} qubits, got {k}"
            )));
        }
        let col_sel = full_mask(self.n) ^ row_sel;
        let rdim = 1usize << k;
        let cdim = 1usize << col_sel.count_ones();
        let mut m = vec![Complex64::ZERO; rdim * cdim];
        for (idx, amp) in self.amps.iter().enumerate() {
            let r = compress_bits(idx as u64, row_sel) as usize;
            let c = compress_bits(idx as u64, col_sel) as usize;
            m[r * cdim + c] = *amp;
        }
        let mut rho = vec![vec![Complex64::ZERO; rdim]; rdim];
        for r1 in 0..rdim {
            for r2 in 0..rdim {
                let mut acc = Complex64::ZERO;
                for c in 0..cdim {
                    acc += m[r1 * cdim + c] * m[r2 * cdim + c].conj();
                }
                rho[r1][r2] = acc;
            }
        }
        Ok(rho)
    }
}

/// Squared Frobenius norm of M M^H for row-major M of shape rdim x cdim.
fn gram_frobenius_sqr(m: &[Complex64], rdim: usize, cdim: usize) -> f64 {
    let mut total = 0.0;
    for r1 in 0..rdim {
        let row1 = &m[r1 * cdim..(r1 + 1) * cdim];
        for r2 in 0..rdim {
            let row2 = &m[r2 * cdim..(r2 + 1) * cdim];
            let mut acc = Complex64::ZERO;
            for c in 0..cdim {
                acc += row1[c] * row2[c].conj();
            }
            total += acc.norm_sqr();
        }
    }
    total
}

/// Uniform superposition |+>^n: all amplitudes 2^(-n/2).
pub fn plus_state(n: usize) -> Result<PureState> {
    if n == 0 || n > MAX_DENSE_QUBITS {
        return Err(Error::Overflow(format!(
            "dense engine supports 1..={MAX_DENSE_QUBITS} qubits, got {n}"
        )));
    }
    let amp = Complex64::new(f64::powi(0.5, n as i32).sqrt(), 0.0);
    Ok(PureState {
        n,
        amps: vec![amp; 1 << n],
    })
}

/// Graph state of `g`: CZ along every edge applied to |+>^n.
/// Every amplitude is exactly +-2^(-n/2).
pub fn graph_state(g: &Graph) -> Result<PureState> {
    let mut st = plus_state(g.vertex_count())?;
    for (a, b) in g.edges() {
        st = st.apply_cz(a, b)?;
    }
    Ok(st)
}

/// Sign table of the six-qubit reference state: row per head block
/// |q1 q2 q3> = 000..111, one sign per tail block |q4 q5 q6> = 000..111.
/// This is the graph state of the triangular prism
/// "6: 1-2, 1-3, 1-6, 2-3, 2-5, 3-4, 4-5, 4-6, 5-6"; every marginal of at
/// most three qubits is maximally mixed.
const REFERENCE_SIGNS: [&str; 8] = [
    "+++-+---", "+++--+++", "++-++-++", "--+-+-++", "+-++++-+", "-+--++-+", "-+++---+", "-++++++-",
];

/// The hard-coded six-qubit reference state, 64 amplitudes of +-1/8.
pub fn gstar_state() -> PureState {
    let mut amps = Vec::with_capacity(64);
    for row in REFERENCE_SIGNS {
        for ch in row.chars() {
            let sign = if ch == '+' { 0.125 } else { -0.125 };
            amps.push(Complex64::new(sign, 0.0));
        }
    }
    PureState { n: 6, amps }
}

/// A 2x2 unitary, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalUnitary {
    m: [[Complex64; 2]; 2],
}

impl LocalUnitary {
    /// Wrap a matrix, checking U U^H = I within 1e-10.
    pub fn new(m: [[Complex64; 2]; 2]) -> Result<LocalUnitary> {
        let u = LocalUnitary { m };
        let d = u.unitarity_defect();
        if d > UNITARY_TOL {
            return Err(Error::NotUnitary);
        }
        Ok(u)
    }

    pub fn entries(&self) -> &[[Complex64; 2]; 2] {
        &self.m
    }

    /// Max-abs entry of U U^H - I.
    pub fn unitarity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = Complex64::ZERO;
                for k in 0..2 {
                    acc += self.m[i][k] * self.m[j][k].conj();
                }
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((acc - target).norm());
            }
        }
        worst
    }

    pub fn identity() -> LocalUnitary {
        let one = Complex64::ONE;
        let zero = Complex64::ZERO;
        LocalUnitary {
            m: [[one, zero], [zero, one]],
        }
    }

    pub fn pauli_z() -> LocalUnitary {
        let one = Complex64::ONE;
        let zero = Complex64::ZERO;
        LocalUnitary {
            m: [[one, zero], [zero, -one]],
        }
    }

    pub fn pauli_x() -> LocalUnitary {
        let one = Complex64::ONE;
        let zero = Complex64::ZERO;
        LocalUnitary {
            m: [[zero, one], [one, zero]],
        }
    }

    pub fn hadamard() -> LocalUnitary {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        LocalUnitary {
            m: [[h, h], [h, -h]],
        }
    }
}

/// Seeded random state: 2^n complex standard Gaussians, normalized.
/// Deterministic for a fixed seed.
pub fn random_state(n: usize, seed: u64) -> Result<PureState> {
    if n == 0 || n > MAX_RANDOM_QUBITS {
        return Err(Error::Overflow(format!(
            "random states support 1..={MAX_RANDOM_QUBITS} qubits, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut amps: Vec<Complex64> = (0..1usize << n)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(re, im)
        })
        .collect();
    let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amps {
        *a /= norm;
    }
    Ok(PureState { n, amps })
}

/// Seeded random 2x2 unitary: two complex Gaussian columns, orthonormalized.
/// Deterministic for a fixed seed; unitary within 1e-12 by construction.
pub fn random_local_unitary(seed: u64) -> LocalUnitary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut g = [[Complex64::ZERO; 2]; 2];
        for col in &mut g {
            for e in col.iter_mut() {
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                *e = Complex64::new(re, im);
            }
        }
        let n1 = (g[0][0].norm_sqr() + g[0][1].norm_sqr()).sqrt();
        if n1 < 1e-6 {
            continue;
        }
        let v1 = [g[0][0] / n1, g[0][1] / n1];
        let overlap = v1[0].conj() * g[1][0] + v1[1].conj() * g[1][1];
        let mut v2 = [g[1][0] - overlap * v1[0], g[1][1] - overlap * v1[1]];
        let n2 = (v2[0].norm_sqr() + v2[1].norm_sqr()).sqrt();
        if n2 < 1e-6 {
            continue;
        }
        v2 = [v2[0] / n2, v2[1] / n2];
        // Columns of U are v1, v2.
        return LocalUnitary {
            m: [[v1[0], v2[0]], [v1[1], v2[1]]],
        };
    }
}
