//! Finite model of distributions supported at the origin of the
//! lower-unipotent coordinates (x, y, z at size three), automatic derivation
//! of the equivariance PDE systems by exact Gauss decomposition, an exact
//! nullspace solver for the kernel spaces, and the closed-form
//! Pochhammer-coefficient kernels.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::affine::AffineForm;
use crate::params::{rho, InductionParams};
use crate::poly::{ring, Polynomial, Ring};
use crate::ratfun::RatFun;
use crate::scalar::{is_natural, rat, ratq, to_i64, Rat};

/// Lower-unipotent coordinates at n = 2: x = entry (2,1), y = (3,2), z = (3,1).
pub const COORD_NAMES: [&str; 3] = ["x", "y", "z"];

/// Ring for the delta model: the three coordinates, the curve parameter t,
/// and the exponent symbols (l0 is the free symbol of one-parameter
/// exponent families).
pub fn delta_ring() -> Ring {
    ring(&["x", "y", "z", "t", "l0", "l1", "l2", "l3", "v1", "v2"])
}

fn coord_indices(r: &Ring) -> [usize; 3] {
    [
        r.index_of("x").expect("coordinate x"),
        r.index_of("y").expect("coordinate y"),
        r.index_of("z").expect("coordinate z"),
    ]
}

/// Finite linear combination of products of derivatives of one-dimensional
/// delta distributions at the origin: term `m ↦ c` stands for
/// c·δ^(m_x)(x)δ^(m_y)(y)δ^(m_z)(z).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaKernel {
    ring: Ring,
    coords: Vec<String>,
    terms: BTreeMap<Vec<u32>, RatFun>,
}

impl DeltaKernel {
    pub fn zero(r: &Ring) -> Self {
        Self {
            ring: r.clone(),
            coords: COORD_NAMES.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(r: &Ring, terms: &[(Vec<u32>, RatFun)]) -> Self {
        let mut k = Self::zero(r);
        for (m, c) in terms {
            k.add_term(m.clone(), c.clone());
        }
        k
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn add_term(&mut self, m: Vec<u32>, c: RatFun) {
        assert_eq!(m.len(), 3, "three coordinates");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let s = &*o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &RatFun)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &[u32]) -> RatFun {
        self.terms.get(m).cloned().unwrap_or_else(|| RatFun::zero(&self.ring))
    }

    pub fn scale(&self, c: &RatFun) -> Self {
        let mut out = Self::zero(&self.ring);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, v) in &other.terms {
            out.add_term(m.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&RatFun::int(&self.ring, -1)))
    }

    /// Scale so the term with the lowest z-derivative order (then
    /// lexicographically smallest multi-index) has coefficient 1.
    pub fn normalized(&self) -> Self {
        match self.leading_index() {
            None => self.clone(),
            Some(m) => {
                let c = self.terms.get(&m).expect("present").clone();
                self.scale(&c.inv())
            }
        }
    }

    /// Multi-index of the normalization term: minimal z-order first.
    pub fn leading_index(&self) -> Option<Vec<u32>> {
        self.terms.keys().min_by_key(|m| (m[2], (*m).clone())).cloned()
    }
}

/// A polynomial expression in coordinate multiplications and coordinate
/// derivatives, normal-ordered (multiplications left of derivatives), with a
/// scalar right-hand side: the equation reads (terms)·K = rhs·K.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdeOperator {
    ring: Ring,
    /// (multiplication multi-index, derivative multi-index) ↦ coefficient.
    terms: BTreeMap<(Vec<u32>, Vec<u32>), RatFun>,
    rhs: RatFun,
}

impl PdeOperator {
    pub fn new(r: &Ring, terms: &[(Vec<u32>, Vec<u32>, RatFun)], rhs: RatFun) -> Self {
        let mut map = BTreeMap::new();
        for (a, b, c) in terms {
            assert_eq!(a.len(), 3);
            assert_eq!(b.len(), 3);
            if !c.is_zero() {
                map.insert((a.clone(), b.clone()), c.clone());
            }
        }
        Self { ring: r.clone(), terms: map, rhs }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Vec<u32>, Vec<u32>), &RatFun)> {
        self.terms.iter()
    }

    pub fn rhs(&self) -> &RatFun {
        &self.rhs
    }

    /// Substitute exponent symbols by affine forms (e.g. numeric values).
    pub fn substitute(&self, map: &BTreeMap<String, AffineForm>) -> Self {
        let mut terms = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            let s = c.substitute_affine(&self.ring, map);
            if !s.is_zero() {
                terms.insert((a.clone(), b.clone()), s);
            }
        }
        Self {
            ring: self.ring.clone(),
            terms,
            rhs: self.rhs.substitute_affine(&self.ring, map),
        }
    }

    /// True when every term multiplies and differentiates by the same
    /// multi-index, so the operator acts diagonally on delta terms.
    pub fn is_diagonal(&self) -> bool {
        self.terms.keys().all(|(a, b)| a == b)
    }
}

fn falling(m: u32, a: u32) -> Rat {
    let mut out = Rat::one();
    for i in 0..a {
        out *= rat(m as i64 - i as i64);
    }
    out
}

/// Left-hand-side action: x^a∂^b on δ^(m) with x·δ^(m)(x) = −m·δ^(m−1)(x) and
/// ∂_x·δ^(m)(x) = δ^(m+1)(x), extended multiplicatively over the coordinates.
pub fn act(op: &PdeOperator, k: &DeltaKernel) -> DeltaKernel {
    let mut out = DeltaKernel::zero(&k.ring);
    for ((a, b), c_op) in &op.terms {
        for (m, c_k) in &k.terms {
            let mut factor = Rat::one();
            let mut idx = Vec::with_capacity(3);
            let mut dead = false;
            for i in 0..3 {
                let q = m[i] + b[i];
                if a[i] > q {
                    dead = true;
                    break;
                }
                let f = falling(q, a[i]);
                if a[i] % 2 == 1 {
                    factor *= -f;
                } else {
                    factor *= f;
                }
                idx.push(q - a[i]);
            }
            if dead || factor.is_zero() {
                continue;
            }
            out.add_term(idx, &(c_op * c_k) * &RatFun::constant(&k.ring, factor));
        }
    }
    out
}

/// act(op, K) − rhs·K; the kernel satisfies the equation iff this vanishes.
pub fn residual(op: &PdeOperator, k: &DeltaKernel) -> DeltaKernel {
    act(op, k).sub(&k.scale(&op.rhs))
}

/// One-parameter subgroup tags whose equivariance induces the PDE system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// diag(t,…,t,1,…,1) with ℓ leading t's, conjugation action; valid ℓ ≤ k.
    DiagGamma(usize),
    /// diag(1,…,1,t,…,t) with ℓ trailing t's, conjugation action; valid ℓ ≤ n−k.
    DiagDelta(usize),
    /// The conjugate by the support representative of the upper-unipotent
    /// generator of the smaller group, acting by left multiplication.
    UnipotentLeft,
}

/// The catalogue of generators whose equations cut out the kernel space at
/// support index k (n = 2).
pub fn generators(k: usize) -> Vec<Generator> {
    assert!(k <= 2, "support index out of range");
    let mut out = Vec::new();
    for l in 1..=k {
        out.push(Generator::DiagGamma(l));
    }
    for l in 1..=(2 - k) {
        out.push(Generator::DiagDelta(l));
    }
    out.push(Generator::UnipotentLeft);
    out
}

type Mat = Vec<Vec<RatFun>>;

fn mat_zero(r: &Ring, n: usize) -> Mat {
    vec![vec![RatFun::zero(r); n]; n]
}

fn mat_identity(r: &Ring, n: usize) -> Mat {
    let mut m = mat_zero(r, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = RatFun::one(r);
    }
    m
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let r = a[0][0].ring().clone();
    let mut out = mat_zero(&r, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = RatFun::zero(&r);
            for (l, a_il) in a[i].iter().enumerate() {
                if !a_il.is_zero() && !b[l][j].is_zero() {
                    acc = &acc + &(a_il * &b[l][j]);
                }
            }
            out[i][j] = acc;
        }
    }
    out
}

/// Support representative matrix: block form ((I_k,0,0),(0,0,I_{n−k}),(0,1,0)).
pub fn support_representative(n: usize, k: usize) -> Vec<Vec<u8>> {
    assert!(k <= n);
    let sz = n + 1;
    let mut m = vec![vec![0u8; sz]; sz];
    for i in 0..k {
        m[i][i] = 1;
    }
    for r_idx in 0..(n - k) {
        m[k + r_idx][k + 1 + r_idx] = 1;
    }
    m[n][k] = 1;
    m
}

fn mat_from_bits(r: &Ring, bits: &[Vec<u8>]) -> Mat {
    bits.iter()
        .map(|row| {
            row.iter()
                .map(|&b| if b == 1 { RatFun::one(r) } else { RatFun::zero(r) })
                .collect()
        })
        .collect()
}

fn mat_transpose(m: &Mat) -> Mat {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i].clone()).collect()).collect()
}

/// LU decomposition without pivoting over the rational-function field:
/// returns (L unit lower triangular, U upper triangular) with M = L·U.
fn lu_decompose(m: &Mat) -> (Mat, Mat) {
    let n = m.len();
    let r = m[0][0].ring().clone();
    let mut u = m.clone();
    let mut l = mat_identity(&r, n);
    for j in 0..n {
        let pivot = u[j][j].clone();
        assert!(!pivot.is_zero(), "decomposition singular");
        for i in (j + 1)..n {
            if u[i][j].is_zero() {
                continue;
            }
            let f = &u[i][j] / &pivot;
            l[i][j] = f.clone();
            for c in j..n {
                let upd = &u[i][c] - &(&f * &u[j][c]);
                u[i][c] = upd;
            }
        }
    }
    (l, u)
}

fn lambda_var(r: &Ring, i: usize) -> RatFun {
    RatFun::var(r, &format!("l{i}"))
}

fn nu_var(r: &Ring, j: usize) -> RatFun {
    RatFun::var(r, &format!("v{j}"))
}

fn subst_t(f: &RatFun, t0: &Rat) -> RatFun {
    let mut map = BTreeMap::new();
    map.insert("t".to_string(), AffineForm::constant(t0.clone()));
    f.substitute_affine(f.ring(), &map)
}

/// Split a polynomial in coordinates and exponent symbols into
/// coordinate-monomial × residual-coefficient pairs.
fn split_by_coords(p: &Polynomial, coords: &[usize; 3]) -> BTreeMap<Vec<u32>, RatFun> {
    let r = p.ring().clone();
    let mut out: BTreeMap<Vec<u32>, Polynomial> = BTreeMap::new();
    for (exp, coeff) in p.terms() {
        let mult: Vec<u32> = coords.iter().map(|&c| exp[c]).collect();
        let mut rest = exp.clone();
        for &c in coords {
            rest[c] = 0;
        }
        let mono = Polynomial::monomial(&r, rest, coeff.clone());
        out.entry(mult)
            .and_modify(|q| *q = &*q + &mono)
            .or_insert(mono);
    }
    out.into_iter()
        .filter(|(_, q)| !q.is_zero())
        .map(|(m, q)| (m, RatFun::from_poly(q)))
        .collect()
}

/// Derive the equivariance PDE for one generator by exact Gauss (LU)
/// decomposition of the transformed lower-unipotent matrix, differentiated at
/// the base point of the curve. n = 2 only.
pub fn derive_pde(k: usize, generator: Generator) -> PdeOperator {
    assert!(k <= 2, "support index out of range");
    let r = delta_ring();
    let n = 2usize;
    let coords = coord_indices(&r);
    let t_idx = r.index_of("t").expect("curve parameter");
    let t = RatFun::var(&r, "t");
    let rho_g = rho(n + 1);
    let rho_h = rho(n);

    // Lower-unipotent coordinate matrix.
    let mut nbar = mat_identity(&r, 3);
    nbar[1][0] = RatFun::var(&r, "x");
    nbar[2][1] = RatFun::var(&r, "y");
    nbar[2][0] = RatFun::var(&r, "z");

    // Transformed matrix, curve base point, and the character factors
    // (f(t), weight) contributing weight·f'(t0)/f(t0) to the log-derivative.
    let (m_t, t0, mut pairs): (Mat, Rat, Vec<(RatFun, RatFun)>) = match generator {
        Generator::DiagGamma(l) => {
            assert!((1..=k).contains(&l), "gamma index out of range");
            let mut a = mat_identity(&r, 3);
            let mut b = mat_identity(&r, 3);
            for i in 0..l {
                a[i][i] = t.inv();
                b[i][i] = t.clone();
            }
            let m = mat_mul(&mat_mul(&a, &nbar), &b);
            let mut pairs = Vec::new();
            for i in 1..=l {
                let wg = &lambda_var(&r, i) - &RatFun::constant(&r, rho_g[i - 1].clone());
                pairs.push((t.clone(), wg));
                let wh = &(-&nu_var(&r, i)) - &RatFun::constant(&r, rho_h[i - 1].clone());
                pairs.push((t.clone(), wh));
            }
            (m, Rat::one(), pairs)
        }
        Generator::DiagDelta(l) => {
            assert!((1..=(n - k)).contains(&l), "delta index out of range");
            let mut a = mat_identity(&r, 3);
            let mut b = mat_identity(&r, 3);
            for i in (3 - l)..3 {
                a[i][i] = t.clone();
                b[i][i] = t.inv();
            }
            let m = mat_mul(&mat_mul(&a, &nbar), &b);
            let mut pairs = Vec::new();
            for i in (n + 1 - l)..=n {
                let wh = &nu_var(&r, i) + &RatFun::constant(&r, rho_h[i - 1].clone());
                pairs.push((t.clone(), wh));
            }
            for i in (n + 2 - l)..=(n + 1) {
                let wg = &RatFun::constant(&r, rho_g[i - 1].clone()) - &lambda_var(&r, i);
                pairs.push((t.clone(), wg));
            }
            (m, Rat::one(), pairs)
        }
        Generator::UnipotentLeft => {
            let xk = mat_from_bits(&r, &support_representative(n, k));
            let xk_inv = mat_transpose(&xk);
            let mut e12 = mat_identity(&r, 3);
            e12[0][1] = t.clone();
            let u = mat_mul(&mat_mul(&xk_inv, &e12), &xk);
            (mat_mul(&u, &nbar), Rat::zero(), Vec::new())
        }
    };

    let (l_mat, u_mat) = lu_decompose(&m_t);

    // Character contribution of the upper-triangular factor's diagonal.
    for (i, weight) in (1..=3).map(|i| {
        let w = &RatFun::constant(&r, rho_g[i - 1].clone()) - &lambda_var(&r, i);
        (i, w)
    }) {
        let d = u_mat[i - 1][i - 1].clone();
        if !d.is_one() {
            pairs.push((d, weight));
        }
    }

    // Vector field: t-derivative of the transformed coordinates at t0.
    let coord_entries = [
        l_mat[1][0].clone(),
        l_mat[2][1].clone(),
        l_mat[2][0].clone(),
    ];
    let mut terms: BTreeMap<(Vec<u32>, Vec<u32>), RatFun> = BTreeMap::new();
    let push = |terms: &mut BTreeMap<(Vec<u32>, Vec<u32>), RatFun>,
                    key: (Vec<u32>, Vec<u32>),
                    val: RatFun| {
        if val.is_zero() {
            return;
        }
        match terms.entry(key) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(val);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let s = &*o.get() + &val;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    };
    for (c, entry) in coord_entries.iter().enumerate() {
        let v = subst_t(&entry.derivative(t_idx), &t0);
        let vp = v.as_polynomial().expect("polynomial vector field").clone();
        assert!(vp.is_free_of(&[t_idx]), "curve parameter must be eliminated");
        let mut deriv = vec![0u32; 3];
        deriv[c] = 1;
        for (mult, coeff) in split_by_coords(&vp, &coords) {
            push(&mut terms, (mult, deriv.clone()), coeff);
        }
    }

    // Log-derivative of the character at the base point.
    let mut dlog = RatFun::zero(&r);
    for (f, w) in &pairs {
        let contrib = &(&f.derivative(t_idx) / f) * w;
        dlog = &dlog + &subst_t(&contrib, &t0);
    }
    let dlog_poly = dlog.as_polynomial().expect("polynomial log-derivative").clone();
    assert!(dlog_poly.is_free_of(&[t_idx]), "curve parameter must be eliminated");

    // Constant-in-coordinates part becomes the right-hand side; the rest
    // moves to the left-hand side with a sign flip.
    let mut rhs = RatFun::zero(&r);
    for (mult, coeff) in split_by_coords(&dlog_poly, &coords) {
        if mult.iter().all(|&e| e == 0) {
            rhs = &rhs + &coeff;
        } else {
            push(&mut terms, (mult, vec![0, 0, 0]), -&coeff);
        }
    }

    PdeOperator { ring: r, terms, rhs }
}

fn params_substitution(p: &InductionParams) -> BTreeMap<String, AffineForm> {
    let mut map = BTreeMap::new();
    for (i, l) in p.lambda.iter().enumerate() {
        map.insert(format!("l{}", i + 1), l.clone());
    }
    for (j, v) in p.nu.iter().enumerate() {
        map.insert(format!("v{}", j + 1), v.clone());
    }
    map
}

/// The two support-degree parameters (n_1, n_2) at support index k, read off
/// from the diagonal (Euler-type) equations; None when either fails to be a
/// constant rational.
pub fn degree_parameters(p: &InductionParams, k: usize) -> Option<(Rat, Rat)> {
    assert_eq!(p.n, 2, "unsupported n");
    let half = ratq(1, 2);
    let c = |a: &AffineForm| a.as_constant().cloned();
    match k {
        1 => Some((
            c(&(&p.nu[0] - &p.lambda[0]))? - half.clone(),
            c(&(&p.lambda[2] - &p.nu[1]))? - half,
        )),
        2 => Some((
            c(&(&p.nu[0] - &p.lambda[0]))? - half,
            c(&(&(&p.nu[0] + &p.nu[1]) - &(&p.lambda[0] + &p.lambda[1])))? - Rat::one(),
        )),
        0 => Some((
            c(&(&p.lambda[2] - &p.nu[1]))? - half,
            c(&(&(&p.lambda[1] + &p.lambda[2]) - &(&p.nu[0] + &p.nu[1])))? - Rat::one(),
        )),
        _ => panic!("support index out of range"),
    }
}

/// Exact nullspace of a matrix over the rational-function field; returns a
/// basis of column vectors.
fn nullspace(rows: &[Vec<RatFun>], ncols: usize, r: &Ring) -> Vec<Vec<RatFun>> {
    let mut m: Vec<Vec<RatFun>> = rows.to_vec();
    let nrows = m.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];
    let mut row = 0usize;
    for col in 0..ncols {
        let mut sel = None;
        for i in row..nrows {
            if !m[i][col].is_zero() {
                sel = Some(i);
                break;
            }
        }
        let Some(sel) = sel else { continue };
        m.swap(row, sel);
        let inv = m[row][col].inv();
        for c in col..ncols {
            m[row][c] = &m[row][c] * &inv;
        }
        for i in 0..nrows {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for c in col..ncols {
                    let upd = &m[i][c] - &(&f * &m[row][c]);
                    m[i][c] = upd;
                }
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
        if row == nrows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![RatFun::zero(r); ncols];
        v[free] = RatFun::one(r);
        for col in 0..ncols {
            if let Some(prow) = pivot_of_col[col] {
                v[col] = -&m[prow][free];
            }
        }
        basis.push(v);
    }
    basis
}

/// Solve for the full kernel space at support index k: assembles the diagonal
/// (Euler) constraints into the support line, checks the sign conditions at
/// the order-two torus points, and returns an exact nullspace basis of the
/// remaining equations, each normalized to leading coefficient one.
pub fn solve_kernels(p: &InductionParams, k: usize) -> (Vec<DeltaKernel>, usize) {
    assert_eq!(p.n, 2, "unsupported n");
    assert!(k <= 2, "support index out of range");
    let r = delta_ring();
    let subs = params_substitution(p);

    let gens = generators(k);
    let ops: Vec<(Generator, PdeOperator)> = gens
        .iter()
        .map(|&g| (g, derive_pde(k, g).substitute(&subs)))
        .collect();

    // Diagonal constraints: Σ_{c∈S}(m_c + 1) = −rhs for the Euler equation
    // with coordinate set S.
    let mut constraints: Vec<(Generator, Vec<usize>, Rat)> = Vec::new();
    for (g, op) in &ops {
        if !op.is_diagonal() {
            continue;
        }
        let mut coords_in = Vec::new();
        for ((a, b), c) in op.terms() {
            assert_eq!(a, b);
            assert_eq!(a.iter().sum::<u32>(), 1, "Euler term shape");
            assert!(c.is_one(), "Euler term coefficient");
            coords_in.push(a.iter().position(|&e| e == 1).expect("one coordinate"));
        }
        let rhs = op
            .rhs()
            .as_constant()
            .expect("integrality of the support degrees must be decidable");
        let val = -rhs - rat(coords_in.len() as i64);
        constraints.push((*g, coords_in, val));
    }
    assert_eq!(constraints.len(), 2, "two torus directions at n = 2");

    // Integrality of the support degrees.
    for (_, _, val) in &constraints {
        if !is_natural(val) {
            return (Vec::new(), 0);
        }
    }

    // Sign conditions at the order-two points of the torus directions.
    for (g, _, val) in &constraints {
        let required = (to_i64(val).rem_euclid(2)) as u8;
        let actual = match g {
            Generator::DiagGamma(l) => {
                (1..=*l).map(|i| p.xi[i - 1] + p.eta[i - 1]).sum::<u8>() % 2
            }
            Generator::DiagDelta(l) => ((p.n + 1 - l)..=p.n)
                .map(|i| p.eta[i - 1] + p.xi[i])
                .sum::<u8>()
                % 2,
            Generator::UnipotentLeft => unreachable!(),
        };
        if actual != required {
            return (Vec::new(), 0);
        }
    }

    // Enumerate the support line from the two Euler constraints, which at
    // n = 2 always involve the coordinate sets {x,z} and {y,z}.
    let mut val_xz = None;
    let mut val_yz = None;
    for (_, s, val) in &constraints {
        let mut s = s.clone();
        s.sort_unstable();
        match s.as_slice() {
            [0, 2] => val_xz = Some(to_i64(val) as u32),
            [1, 2] => val_yz = Some(to_i64(val) as u32),
            _ => panic!("unexpected Euler coordinate set"),
        }
    }
    let (vx, vy) = (val_xz.expect("x-side constraint"), val_yz.expect("y-side constraint"));
    let nmax = vx.min(vy);
    let basis_idx: Vec<Vec<u32>> =
        (0..=nmax).map(|j| vec![vx - j, vy - j, j]).collect();

    // Linear system from the non-diagonal equations on the coefficient vector.
    let mut rows: Vec<Vec<RatFun>> = Vec::new();
    for (_, op) in ops.iter().filter(|(_, op)| !op.is_diagonal()) {
        let mut per_op_rows: BTreeMap<Vec<u32>, Vec<RatFun>> = BTreeMap::new();
        for (col, m) in basis_idx.iter().enumerate() {
            let mut unit = DeltaKernel::zero(&r);
            unit.add_term(m.clone(), RatFun::one(&r));
            let res = residual(op, &unit);
            for (idx, c) in res.terms() {
                let row = per_op_rows
                    .entry(idx.clone())
                    .or_insert_with(|| vec![RatFun::zero(&r); basis_idx.len()]);
                row[col] = &row[col] + c;
            }
        }
        for (_, row) in per_op_rows {
            rows.push(row);
        }
    }

    let null = nullspace(&rows, basis_idx.len(), &r);
    let mut kernels = Vec::new();
    for v in null {
        let mut kern = DeltaKernel::zero(&r);
        for (col, c) in v.into_iter().enumerate() {
            kern.add_term(basis_idx[col].clone(), c);
        }
        kernels.push(kern.normalized());
    }
    let dim = kernels.len();
    (kernels, dim)
}

/// Case selector for the closed-form kernels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelCase {
    /// Sum from j = 0 (ends early when a numerator factor vanishes).
    FromZero,
    /// Sum from j = ℓ0 + 1 (support index 1 only).
    Truncated(u32),
}

/// The closed-form Pochhammer-coefficient kernel at support index k, built by
/// exact recurrence ratios with first nonzero coefficient one.
pub fn closed_form_kernel(
    p: &InductionParams,
    k: usize,
    case: KernelCase,
) -> Result<DeltaKernel, String> {
    assert_eq!(p.n, 2, "unsupported n");
    let r = delta_ring();
    let (n1r, n2r) = degree_parameters(p, k)
        .ok_or_else(|| String::from("case preconditions violated: symbolic degrees"))?;
    if !is_natural(&n1r) || !is_natural(&n2r) {
        return Err(String::from("case preconditions violated: degrees not natural"));
    }
    let (n1, n2) = (to_i64(&n1r), to_i64(&n2r));
    let nmax = n1.min(n2);

    let start = match case {
        KernelCase::FromZero => 0i64,
        KernelCase::Truncated(l0) => {
            if k != 1 {
                return Err(String::from("case preconditions violated: truncation"));
            }
            l0 as i64 + 1
        }
    };
    if start > nmax {
        return Err(String::from("case preconditions violated: empty sum"));
    }

    // Exponent differences as ring elements (symbolic entries allowed).
    let lam = |i: usize| {
        RatFun::from_poly(Polynomial::from_affine(&r, &p.lambda[i - 1]))
    };
    let int = |v: i64| RatFun::int(&r, v);

    // Ratio c_{j+1}/c_j as (numerator, denominator).
    let ratio = |j: i64| -> (RatFun, RatFun) {
        match k {
            1 => {
                let num = -&(&(&(&lam(2) - &lam(3)) + &int(n2 - j))
                    * &(&int(n1 - j) * &int(n2 - j)));
                let den = &(&(&lam(1) - &lam(3)) + &int(n1 + n2 - j)) * &int(j + 1);
                (num, den)
            }
            2 => {
                let num = &int(n1 - j) * &(&(&lam(1) - &lam(2)) + &int(n1 - n2 + j));
                (num, int(j + 1))
            }
            0 => {
                let num = &int(n1 - j) * &(&(&lam(3) - &lam(2)) - &int(n1 - j));
                (num, int(j + 1))
            }
            _ => panic!("support index out of range"),
        }
    };

    let mut coeffs: Vec<RatFun> = Vec::new();
    let mut c = RatFun::one(&r);
    for j in start..=nmax {
        coeffs.push(c.clone());
        if j == nmax {
            break;
        }
        let (num, den) = ratio(j);
        let prod = &num * &c;
        if prod.is_zero() {
            c = RatFun::zero(&r);
        } else {
            if den.is_zero() {
                return Err(String::from(
                    "case preconditions violated: vanishing recurrence denominator",
                ));
            }
            c = &prod / &den;
        }
    }

    let mut kern = DeltaKernel::zero(&r);
    for (off, cj) in coeffs.into_iter().enumerate() {
        let j = start + off as i64;
        let orders = match k {
            1 | 2 => vec![(n1 - j) as u32, (n2 - j) as u32, j as u32],
            0 => vec![(n2 - j) as u32, (n1 - j) as u32, j as u32],
            _ => unreachable!(),
        };
        kern.add_term(orders, cj);
    }
    Ok(kern)
}

/// Parameter family realizing the two-dimensional kernel space at support
/// index 1: requires n_1, n_2 ≥ 1 and 0 ≤ k_0 ≤ ℓ_0 ≤ min(n_1,n_2) − 1.
pub fn multiplicity_two_params(
    lambda0: &AffineForm,
    n1: u32,
    n2: u32,
    k0: u32,
    l0: u32,
    xi: [u8; 3],
) -> InductionParams {
    assert!(n1 >= 1 && n2 >= 1, "degrees must be positive");
    assert!(k0 <= l0 && l0 + 1 <= n1.min(n2), "truncation indices out of range");
    let (n1i, n2i, k0i, l0i) = (n1 as i64, n2 as i64, k0 as i64, l0 as i64);
    let lambda = vec![
        lambda0.clone(),
        lambda0.add_int(n1i + k0i - l0i),
        lambda0.add_int(n1i + n2i - l0i),
    ];
    let nu = vec![
        lambda0.add_const(&(rat(n1i) + ratq(1, 2))),
        lambda0.add_const(&(rat(n1i - l0i) - ratq(1, 2))),
    ];
    let eta = vec![(xi[0] + (n1 % 2) as u8) % 2, (xi[2] + (n2 % 2) as u8) % 2];
    InductionParams::new(2, xi.to_vec(), lambda, eta, nu)
}

/// Rank of a list of kernels viewed as vectors over the rational-function
/// field (helper for span comparisons).
pub fn kernel_rank(kernels: &[DeltaKernel]) -> usize {
    if kernels.is_empty() {
        return 0;
    }
    let r = kernels[0].ring().clone();
    let mut all_idx: Vec<Vec<u32>> = Vec::new();
    for k in kernels {
        for (m, _) in k.terms() {
            if !all_idx.contains(m) {
                all_idx.push(m.clone());
            }
        }
    }
    let rows: Vec<Vec<RatFun>> = kernels
        .iter()
        .map(|k| all_idx.iter().map(|m| k.coefficient(m)).collect())
        .collect();
    let null = nullspace(&mat_transpose_rect(&rows, all_idx.len(), &r), kernels.len(), &r);
    kernels.len() - null.len()
}

fn mat_transpose_rect(rows: &[Vec<RatFun>], ncols: usize, r: &Ring) -> Vec<Vec<RatFun>> {
    (0..ncols)
        .map(|j| {
            rows.iter()
                .map(|row| row.get(j).cloned().unwrap_or_else(|| RatFun::zero(r)))
                .collect()
        })
        .collect()
}

/// True when the two lists of kernels span the same linear space.
pub fn same_span(a: &[DeltaKernel], b: &[DeltaKernel]) -> bool {
    let ra = kernel_rank(a);
    let rb = kernel_rank(b);
    if ra != rb {
        return false;
    }
    let mut joined: Vec<DeltaKernel> = a.to_vec();
    joined.extend_from_slice(b);
    kernel_rank(&joined) == ra
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::AffineForm;

    fn rf(r: &Ring, n: i64, d: i64) -> RatFun {
        RatFun::constant(r, ratq(n, d))
    }

    #[test]
    fn act_model_axioms() {
        let r = delta_ring();
        // x·δ(x) = 0.
        let mut k = DeltaKernel::zero(&r);
        k.add_term(vec![0, 0, 0], RatFun::one(&r));
        let x_mult = PdeOperator::new(
            &r,
            &[(vec![1, 0, 0], vec![0, 0, 0], RatFun::one(&r))],
            RatFun::zero(&r),
        );
        assert!(act(&x_mult, &k).is_zero());

        // (x∂_x)δ^(m) = −(m+1)δ^(m).
        let euler = PdeOperator::new(
            &r,
            &[(vec![1, 0, 0], vec![1, 0, 0], RatFun::one(&r))],
            RatFun::zero(&r),
        );
        for m in 0..5u32 {
            let mut km = DeltaKernel::zero(&r);
            km.add_term(vec![m, 2, 1], RatFun::one(&r));
            let out = act(&euler, &km);
            assert_eq!(out.coefficient(&[m, 2, 1]), rf(&r, -(m as i64) - 1, 1));
            assert_eq!(out.num_terms(), 1);
        }

        // ∂∘x − x∘∂ = identity on a random-ish kernel.
        let dx_x = PdeOperator::new(
            &r,
            &[
                // Normal ordering of ∂_x∘x is x∂_x + 1.
                (vec![1, 0, 0], vec![1, 0, 0], RatFun::one(&r)),
                (vec![0, 0, 0], vec![0, 0, 0], RatFun::one(&r)),
            ],
            RatFun::zero(&r),
        );
        let x_dx = PdeOperator::new(
            &r,
            &[(vec![1, 0, 0], vec![1, 0, 0], RatFun::one(&r))],
            RatFun::zero(&r),
        );
        let mut kern = DeltaKernel::zero(&r);
        kern.add_term(vec![3, 1, 2], rf(&r, 5, 7));
        kern.add_term(vec![0, 4, 1], rf(&r, -2, 3));
        kern.add_term(vec![2, 2, 0], rf(&r, 9, 1));
        let diff = act(&dx_x, &kern).sub(&act(&x_dx, &kern));
        assert_eq!(diff, kern);
    }

    #[test]
    fn pde_calibration_support_one() {
        // The three equations at support index 1, term for term.
        let r = delta_ring();
        let one = RatFun::one(&r);
        let l = |i: usize| RatFun::var(&r, &format!("l{i}"));
        let v = |j: usize| RatFun::var(&r, &format!("v{j}"));

        // x∂x + z∂z = λ1 − ν1 − 3/2.
        let g1 = derive_pde(1, Generator::DiagGamma(1));
        let expect_g1 = PdeOperator::new(
            &r,
            &[
                (vec![1, 0, 0], vec![1, 0, 0], one.clone()),
                (vec![0, 0, 1], vec![0, 0, 1], one.clone()),
            ],
            &(&l(1) - &v(1)) - &rf(&r, 3, 2),
        );
        assert_eq!(g1, expect_g1);

        // y∂y + z∂z = ν2 − λ3 − 3/2.
        let d1 = derive_pde(1, Generator::DiagDelta(1));
        let expect_d1 = PdeOperator::new(
            &r,
            &[
                (vec![0, 1, 0], vec![0, 1, 0], one.clone()),
                (vec![0, 0, 1], vec![0, 0, 1], one.clone()),
            ],
            &(&v(2) - &l(3)) - &rf(&r, 3, 2),
        );
        assert_eq!(d1, expect_d1);

        // z(λ1−λ3−2 − x∂x − z∂z − y∂y) − xy(λ2−λ3−1 − y∂y) = 0, expanded in
        // normal order.
        let u = derive_pde(1, Generator::UnipotentLeft);
        let expect_u = PdeOperator::new(
            &r,
            &[
                (vec![1, 0, 1], vec![1, 0, 0], -&one),
                (vec![0, 0, 2], vec![0, 0, 1], -&one),
                (vec![0, 1, 1], vec![0, 1, 0], -&one),
                (vec![1, 2, 0], vec![0, 1, 0], one.clone()),
                (vec![0, 0, 1], vec![0, 0, 0], &(&l(1) - &l(3)) - &rf(&r, 2, 1)),
                (vec![1, 1, 0], vec![0, 0, 0], -&(&(&l(2) - &l(3)) - &one)),
            ],
            RatFun::zero(&r),
        );
        assert_eq!(u, expect_u);
    }

    #[test]
    fn closed_forms_satisfy_derived_equations() {
        // Support 1: λ = (0, 1/3, 7), ν with n1 = 2, n2 = 3.
        let p1 = InductionParams::numeric(
            2,
            &[rat(0), ratq(1, 3), rat(7)],
            &[ratq(5, 2), ratq(7, 2)],
        )
        .with_parities(vec![0, 0, 0], vec![0, 1]);
        let k1 = closed_form_kernel(&p1, 1, KernelCase::FromZero).expect("kernel");
        let subs = params_substitution(&p1);
        for g in generators(1) {
            let op = derive_pde(1, g).substitute(&subs);
            assert!(residual(&op, &k1).is_zero(), "support 1, {g:?}");
        }

        // Support 2: λ = (1/5, 1/7, 4), n1 = 1, n2 = 2.
        let p2 = InductionParams::numeric(
            2,
            &[ratq(1, 5), ratq(1, 7), rat(4)],
            &[ratq(17, 10), &(&ratq(1, 5) + &ratq(1, 7)) + &ratq(13, 10)],
        );
        let (n1, n2) = degree_parameters(&p2, 2).expect("constant degrees");
        assert_eq!((n1, n2), (rat(1), rat(2)));
        let k2 = closed_form_kernel(&p2, 2, KernelCase::FromZero).expect("kernel");
        let subs = params_substitution(&p2);
        for g in generators(2) {
            let op = derive_pde(2, g).substitute(&subs);
            assert!(residual(&op, &k2).is_zero(), "support 2, {g:?}");
        }

        // Support 0: λ = (6, 1/7, 1/3), n1 = 2, n2 = 3.
        let lam = [rat(6), ratq(1, 7), ratq(1, 3)];
        let nu2 = &lam[2] - &ratq(5, 2);
        let nu1 = &(&(&lam[1] + &lam[2]) - &rat(4)) - &nu2;
        let p0 = InductionParams::numeric(2, &lam, &[nu1, nu2]);
        let (n1, n2) = degree_parameters(&p0, 0).expect("constant degrees");
        assert_eq!((n1, n2), (rat(2), rat(3)));
        let k0 = closed_form_kernel(&p0, 0, KernelCase::FromZero).expect("kernel");
        let subs = params_substitution(&p0);
        for g in generators(0) {
            let op = derive_pde(0, g).substitute(&subs);
            assert!(residual(&op, &k0).is_zero(), "support 0, {g:?}");
        }
    }

    #[test]
    fn solver_matches_closed_form_generic() {
        // Generic exponents (all pairwise differences non-integral).
        let p = InductionParams::numeric(
            2,
            &[rat(0), ratq(1, 3), rat(7)],
            &[ratq(5, 2), ratq(7, 2)],
        )
        .with_parities(vec![0, 0, 0], vec![0, 1]);
        let (basis, dim) = solve_kernels(&p, 1);
        assert_eq!(dim, 1);
        let cf = closed_form_kernel(&p, 1, KernelCase::FromZero).expect("kernel");
        assert_eq!(basis[0], cf.normalized());

        // Recurrence on the solved coefficients.
        let (n1, n2) = degree_parameters(&p, 1).expect("constant degrees");
        let (n1, n2) = (to_i64(&n1), to_i64(&n2));
        let l13 = p.lambda_rat(1) - p.lambda_rat(3);
        let l23 = p.lambda_rat(2) - p.lambda_rat(3);
        for j in 0..n1.min(n2) {
            let cj = basis[0].coefficient(&[(n1 - j) as u32, (n2 - j) as u32, j as u32]);
            let cj1 = basis[0]
                .coefficient(&[(n1 - j - 1) as u32, (n2 - j - 1) as u32, (j + 1) as u32]);
            let lhs = cj1.scale(&((&l13 + &rat(n1 + n2 - j)) * rat(j + 1)));
            let rhs = cj.scale(&-((&l23 + &rat(n2 - j)) * rat(n1 - j) * rat(n2 - j)));
            assert_eq!(lhs, rhs, "recurrence at j = {j}");
        }
    }

    #[test]
    fn solver_dimension_two_family() {
        // λ0 = 0, n1 = 2, n2 = 2, k0 = 0, ℓ0 = 1: the two-dimensional case.
        let p = multiplicity_two_params(&AffineForm::zero(), 2, 2, 0, 1, [0, 0, 0]);
        assert_eq!(
            p.lambda,
            vec![AffineForm::from_int(0), AffineForm::from_int(1), AffineForm::from_int(3)]
        );
        assert_eq!(p.nu[0].as_constant(), Some(&ratq(5, 2)));
        assert_eq!(p.nu[1].as_constant(), Some(&ratq(1, 2)));

        let (basis, dim) = solve_kernels(&p, 1);
        assert_eq!(dim, 2);
        let upper = closed_form_kernel(&p, 1, KernelCase::Truncated(1)).expect("upper");
        let lower = closed_form_kernel(&p, 1, KernelCase::FromZero).expect("lower");
        // The lower kernel is supported in j ≤ k0 = 0, the upper in j ≥ ℓ0+1.
        assert_eq!(lower.num_terms(), 1);
        assert!(same_span(&basis, &[upper, lower]));
    }

    #[test]
    fn solver_dimension_zero_cases() {
        // Non-integral degree.
        let p = InductionParams::numeric(
            2,
            &[rat(0), ratq(1, 3), rat(7)],
            &[ratq(5, 3), ratq(7, 2)],
        );
        assert_eq!(solve_kernels(&p, 1).1, 0);

        // Integral degrees but mismatched sign conditions.
        let p = InductionParams::numeric(
            2,
            &[rat(0), ratq(1, 3), rat(7)],
            &[ratq(5, 2), ratq(7, 2)],
        );
        // n1 = 2 even, n2 = 3 odd: the second parity bit must be 1.
        assert_eq!(solve_kernels(&p, 1).1, 0);
        let ok = p.clone().with_parities(vec![0, 0, 0], vec![0, 1]);
        assert_eq!(solve_kernels(&ok, 1).1, 1);
    }

    #[test]
    fn solver_consistent_with_membership_hint() {
        use crate::params::classify_generic;
        // Generic exponents with natural degrees at every support index.
        let lam = [ratq(1, 3), ratq(1, 5), ratq(1, 7)];
        for k in 0..=2usize {
            // Engineer ν so that both degrees are small naturals.
            let (nu, eta) = match k {
                1 => (
                    [&lam[0] + &ratq(5, 2), &lam[2] - &ratq(3, 2)],
                    vec![0u8, 1u8],
                ),
                2 => (
                    [&lam[0] + &ratq(3, 2), &lam[1] + &ratq(3, 2)],
                    vec![1u8, 1u8],
                ),
                0 => (
                    [&lam[1] - &ratq(1, 2), &lam[2] - &ratq(5, 2)],
                    vec![0u8, 0u8],
                ),
                _ => unreachable!(),
            };
            let p = InductionParams::numeric(2, &lam, &nu).with_parities(vec![0, 0, 0], eta);
            let hint = classify_generic(&p, k);
            assert!(hint.generic, "k = {k}");
            let (_, dim) = solve_kernels(&p, k);
            assert_eq!(dim as u8, hint.dimension_hint, "k = {k}");
        }
    }
}
