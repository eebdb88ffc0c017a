//! Root data of finite simple types and lattice arithmetic on coweights.
//!
//! Conventions:
//! - nodes are numbered as in Bourbaki, stored 0-based and printed 1-based;
//! - `cartan[i][j] = <alpha_i^vee, alpha_j>`;
//! - the coweight lattice is the coroot lattice (simply-connected group), so
//!   a [`Coweight`] is an integer vector in the simple-coroot basis;
//! - a [`WeightVector`] holds coordinates in the basis dual to the simple
//!   coroots, i.e. in the basis of fundamental weights.
//!
//! For G2 the table is `[[2, -3], [-1, 2]]`: node 1 carries the long coroot.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::weyl::WeylElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A supported finite Cartan type such as `A4` or `G2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CartanType {
    family: Family,
    rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => rank == 6,
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(Error::UnsupportedType(format!("{family:?}{rank}")))
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The Cartan matrix in Bourbaki numbering.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
            a[i][j] = aij;
            a[j][i] = aji;
        };
        match self.family {
            Family::A => (0..n - 1).for_each(|i| link(i, i + 1, -1, -1)),
            Family::B => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                // alpha_n short
                link(n - 2, n - 1, -1, -2);
            }
            Family::C => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                // alpha_n long
                link(n - 2, n - 1, -2, -1);
            }
            Family::D => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 3, n - 1, -1, -1);
            }
            Family::E => {
                for (i, j) in [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)] {
                    link(i - 1, j - 1, -1, -1);
                }
            }
            Family::F => {
                link(0, 1, -1, -1);
                link(1, 2, -1, -2);
                link(2, 3, -1, -1);
            }
            Family::G => link(0, 1, -3, -1),
        }
        a
    }

    fn all_of_rank(rank: usize) -> Vec<CartanType> {
        [
            Family::A,
            Family::B,
            Family::C,
            Family::D,
            Family::E,
            Family::F,
            Family::G,
        ]
        .into_iter()
        .filter_map(|f| CartanType::new(f, rank).ok())
        .collect()
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::UnsupportedType(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::UnsupportedType(s.to_string()))?;
        CartanType::new(family, rank)
    }
}

/// An element of the coweight lattice in the simple-coroot basis.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coweight(pub Vec<i64>);

impl Coweight {
    pub fn zero(rank: usize) -> Self {
        Self(vec![0; rank])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Sum of the coordinates.
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_nonpositive(&self) -> bool {
        self.0.iter().all(|&c| c <= 0)
    }

    pub fn scaled(&self, k: i64) -> Self {
        Self(self.0.iter().map(|c| c * k).collect())
    }
}

impl fmt::Display for Coweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Coweight {
    type Err = Error;

    /// Comma-separated integers, e.g. `-1,-1`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Err(Error::Parse("empty coweight".into()));
        }
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad coweight coordinate {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Coweight)
    }
}

impl Add for &Coweight {
    type Output = Coweight;
    fn add(self, rhs: &Coweight) -> Coweight {
        debug_assert_eq!(self.0.len(), rhs.0.len());
        Coweight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Coweight {
    type Output = Coweight;
    fn sub(self, rhs: &Coweight) -> Coweight {
        debug_assert_eq!(self.0.len(), rhs.0.len());
        Coweight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Add for Coweight {
    type Output = Coweight;
    fn add(self, rhs: Coweight) -> Coweight {
        &self + &rhs
    }
}

impl Sub for Coweight {
    type Output = Coweight;
    fn sub(self, rhs: Coweight) -> Coweight {
        &self - &rhs
    }
}

impl AddAssign<&Coweight> for Coweight {
    fn add_assign(&mut self, rhs: &Coweight) {
        self.0.iter_mut().zip(&rhs.0).for_each(|(a, b)| *a += b);
    }
}

impl SubAssign<&Coweight> for Coweight {
    fn sub_assign(&mut self, rhs: &Coweight) {
        self.0.iter_mut().zip(&rhs.0).for_each(|(a, b)| *a -= b);
    }
}

impl Neg for Coweight {
    type Output = Coweight;
    fn neg(self) -> Coweight {
        Coweight(self.0.into_iter().map(|c| -c).collect())
    }
}

impl Mul<&Coweight> for i64 {
    type Output = Coweight;
    fn mul(self, rhs: &Coweight) -> Coweight {
        rhs.scaled(self)
    }
}

/// A weight with coordinates in the fundamental-weight basis.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightVector<T>(pub Vec<T>);

impl<T: Scalar> WeightVector<T> {
    pub fn coords(&self) -> &[T] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }
}

impl<T: Scalar> Add for &WeightVector<T> {
    type Output = WeightVector<T>;
    fn add(self, rhs: &WeightVector<T>) -> WeightVector<T> {
        WeightVector(
            self.0
                .iter()
                .zip(&rhs.0)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }
}

/// Root datum of a simply-connected almost simple group of finite type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    label: CartanType,
    cartan: Vec<Vec<i64>>,
    positive_coroots: Vec<Coweight>,
}

impl RootDatum {
    /// Root datum of a supported type in Bourbaki numbering.
    pub fn new(label: CartanType) -> Self {
        let cartan = label.cartan_matrix();
        let positive_coroots = close_coroots(&cartan);
        Self {
            label,
            cartan,
            positive_coroots,
        }
    }

    pub fn build(family: Family, rank: usize) -> Result<Self> {
        CartanType::new(family, rank).map(Self::new)
    }

    /// Root datum from an arbitrary Cartan matrix of finite type. Node order
    /// is kept as given; the label is identified up to renumbering.
    pub fn from_cartan(cartan: Vec<Vec<i64>>) -> Result<Self> {
        validate_cartan(&cartan)?;
        let label = identify(&cartan).ok_or_else(|| {
            Error::UnsupportedType(format!("no supported type has Cartan matrix {cartan:?}"))
        })?;
        let positive_coroots = close_coroots(&cartan);
        Ok(Self {
            label,
            cartan,
            positive_coroots,
        })
    }

    pub fn label(&self) -> CartanType {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `a_ij = <alpha_i^vee, alpha_j>`.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    pub fn is_simply_laced(&self) -> bool {
        (0..self.rank()).all(|i| (0..self.rank()).all(|j| self.cartan[i][j] >= -1))
    }

    /// Order of `s_i s_j` read off the Cartan matrix.
    pub fn braid_order(&self, i: usize, j: usize) -> u8 {
        if i == j {
            return 1;
        }
        match self.cartan[i][j] * self.cartan[j][i] {
            0 => 2,
            1 => 3,
            2 => 4,
            3 => 6,
            p => unreachable!("finite type has a_ij a_ji <= 3, got {p}"),
        }
    }

    pub fn check_node(&self, node: usize) -> Result<()> {
        if node < self.rank() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                node: node + 1,
                rank: self.rank(),
            })
        }
    }

    pub fn check_rank(&self, found: usize) -> Result<()> {
        if found == self.rank() {
            Ok(())
        } else {
            Err(Error::RankMismatch {
                expected: self.rank(),
                found,
            })
        }
    }

    pub fn zero(&self) -> Coweight {
        Coweight::zero(self.rank())
    }

    pub fn simple_coroot(&self, i: usize) -> Coweight {
        let mut c = self.zero();
        c.0[i] = 1;
        c
    }

    /// `alpha_j` in the fundamental-weight basis: coordinates `a_ij`.
    pub fn simple_root<T: Scalar>(&self, j: usize) -> WeightVector<T> {
        WeightVector((0..self.rank()).map(|i| T::from_int(self.cartan[i][j])).collect())
    }

    pub fn fundamental_weight<T: Scalar>(&self, j: usize) -> WeightVector<T> {
        WeightVector(
            (0..self.rank())
                .map(|i| T::from_int(i64::from(i == j)))
                .collect(),
        )
    }

    pub fn fundamental_weights<T: Scalar>(&self) -> Vec<WeightVector<T>> {
        (0..self.rank()).map(|j| self.fundamental_weight(j)).collect()
    }

    /// The perfect pairing `<mu, xi>`.
    pub fn pair<T: Scalar>(&self, mu: &Coweight, xi: &WeightVector<T>) -> Result<T> {
        self.check_rank(mu.rank())?;
        self.check_rank(xi.rank())?;
        Ok(mu
            .0
            .iter()
            .zip(&xi.0)
            .fold(T::zero(), |acc, (&m, x)| acc + T::from_int(m) * x.clone()))
    }

    /// `<mu, alpha_i>` as an integer.
    pub fn root_pairing(&self, mu: &Coweight, i: usize) -> i64 {
        mu.0.iter()
            .enumerate()
            .map(|(j, &m)| m * self.cartan[j][i])
            .sum()
    }

    /// `s_i(mu) = mu - <mu, alpha_i> alpha_i^vee`.
    pub fn reflect(&self, i: usize, mu: &Coweight) -> Result<Coweight> {
        self.check_node(i)?;
        self.check_rank(mu.rank())?;
        Ok(self.reflect_unchecked(i, mu))
    }

    pub(crate) fn reflect_unchecked(&self, i: usize, mu: &Coweight) -> Coweight {
        let mut out = mu.clone();
        out.0[i] -= self.root_pairing(mu, i);
        out
    }

    /// Dominance order: `mu <= nu` iff `nu - mu` is a nonnegative sum of
    /// simple coroots.
    pub fn leq(&self, mu: &Coweight, nu: &Coweight) -> bool {
        mu.0.iter().zip(&nu.0).all(|(a, b)| a <= b)
    }

    /// Twisted order: `mu <=_w nu` iff `w^{-1} mu <= w^{-1} nu`.
    pub fn leq_twisted(&self, mu: &Coweight, nu: &Coweight, w: &WeylElement) -> bool {
        let inv = w.inverse(self);
        self.leq(&inv.apply(mu), &inv.apply(nu))
    }

    pub fn is_dominant(&self, mu: &Coweight) -> bool {
        (0..self.rank()).all(|i| self.root_pairing(mu, i) >= 0)
    }

    /// Error naming the first node where `mu` fails to be dominant.
    pub fn check_dominant(&self, mu: &Coweight) -> Result<()> {
        self.check_rank(mu.rank())?;
        match (0..self.rank())
            .map(|i| (i, self.root_pairing(mu, i)))
            .find(|&(_, v)| v < 0)
        {
            None => Ok(()),
            Some((node, value)) => Err(Error::NotDominant {
                coweight: mu.to_string(),
                node: node + 1,
                value,
            }),
        }
    }

    /// Returns `(mu_plus, v)` with `v(mu) = mu_plus` dominant.
    pub fn dominant_representative(&self, mu: &Coweight) -> (Coweight, WeylElement) {
        let mut cur = mu.clone();
        let mut v = WeylElement::identity(self);
        while let Some(i) = (0..self.rank()).find(|&i| self.root_pairing(&cur, i) < 0) {
            cur = self.reflect_unchecked(i, &cur);
            v = WeylElement::simple(self, i).mul(self, &v);
        }
        (cur, v)
    }

    /// Positive coroots ordered by height, then lexicographically.
    pub fn positive_coroots(&self) -> &[Coweight] {
        &self.positive_coroots
    }

    /// Number of positive coroots, the length of the longest element.
    pub fn num_positive(&self) -> usize {
        self.positive_coroots.len()
    }

    /// All weights of the irreducible representation with highest weight
    /// `lambda`: the coweights whose dominant representative lies below it.
    pub fn weights_of(&self, lambda: &Coweight) -> Result<Vec<Coweight>> {
        self.check_dominant(lambda)?;
        let mut seen: HashSet<Coweight> = HashSet::from([lambda.clone()]);
        let mut queue = VecDeque::from([lambda.clone()]);
        while let Some(mu) = queue.pop_front() {
            for i in 0..self.rank() {
                let mut nu = mu.clone();
                nu.0[i] -= 1;
                if seen.contains(&nu) {
                    continue;
                }
                let (plus, _) = self.dominant_representative(&nu);
                if self.leq(&plus, lambda) {
                    seen.insert(nu.clone());
                    queue.push_back(nu);
                }
            }
        }
        let mut out: Vec<_> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    /// Symmetrizer `d` with `d_i a_ij = d_j a_ji` (half the squared root
    /// lengths), normalized so the smallest entry is one.
    pub fn symmetrizer(&self) -> Vec<i64> {
        symmetrizer(&self.cartan).expect("validated Cartan matrices are symmetrizable")
    }
}

fn close_coroots(cartan: &[Vec<i64>]) -> Vec<Coweight> {
    let n = cartan.len();
    let reflect = |i: usize, mu: &Coweight| {
        let mut out = mu.clone();
        out.0[i] -= (0..n).map(|j| mu.0[j] * cartan[j][i]).sum::<i64>();
        out
    };
    let mut seen: HashSet<Coweight> = HashSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut c = Coweight::zero(n);
        c.0[i] = 1;
        seen.insert(c.clone());
        queue.push_back(c);
    }
    while let Some(beta) = queue.pop_front() {
        for i in 0..n {
            let next = reflect(i, &beta);
            if next.is_nonnegative() && !seen.contains(&next) {
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.cmp(a)));
    out
}

fn symmetrizer(cartan: &[Vec<i64>]) -> Option<Vec<i64>> {
    let n = cartan.len();
    let mut d: Vec<Option<Ratio<i64>>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Ratio::from_integer(1));
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let di = d[i].unwrap();
            for j in 0..n {
                if j == i || cartan[i][j] == 0 {
                    continue;
                }
                // d_i a_ij = d_j a_ji
                let dj = di * Ratio::new(cartan[i][j], cartan[j][i]);
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                    Some(existing) if existing != dj => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let d: Vec<Ratio<i64>> = d.into_iter().map(Option::unwrap).collect();
    let min = d.iter().min().copied()?;
    let scaled: Vec<Ratio<i64>> = d.iter().map(|x| x / min).collect();
    let lcm = scaled
        .iter()
        .fold(1i64, |acc, x| num_integer_lcm(acc, *x.denom()));
    Some(scaled.iter().map(|x| (x * lcm).to_integer()).collect())
}

fn num_integer_lcm(a: i64, b: i64) -> i64 {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

fn validate_cartan(cartan: &[Vec<i64>]) -> Result<()> {
    let n = cartan.len();
    if n == 0 {
        return Err(Error::InvalidCartan("empty matrix".into()));
    }
    for (i, row) in cartan.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidCartan("matrix is not square".into()));
        }
        if row[i] != 2 {
            return Err(Error::InvalidCartan(format!("diagonal entry {} is not 2", i + 1)));
        }
        for j in 0..n {
            if i != j && (row[j] > 0 || (row[j] == 0) != (cartan[j][i] == 0)) {
                return Err(Error::InvalidCartan(format!(
                    "bad off-diagonal pair at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let d = symmetrizer(cartan)
        .ok_or_else(|| Error::InvalidCartan("matrix is not symmetrizable".into()))?;
    // Sylvester's criterion on the symmetrized matrix.
    let sym: Vec<Vec<Ratio<i128>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Ratio::from_integer(i128::from(d[i] * cartan[i][j])))
                .collect()
        })
        .collect();
    for k in 1..=n {
        if determinant(&sym, k) <= Ratio::from_integer(0) {
            return Err(Error::InvalidCartan("matrix is not of finite type".into()));
        }
    }
    Ok(())
}

fn determinant(m: &[Vec<Ratio<i128>>], k: usize) -> Ratio<i128> {
    let mut a: Vec<Vec<Ratio<i128>>> = m[..k].iter().map(|r| r[..k].to_vec()).collect();
    let mut det = Ratio::from_integer(1);
    for c in 0..k {
        let Some(p) = (c..k).find(|&r| a[r][c] != Ratio::from_integer(0)) else {
            return Ratio::from_integer(0);
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let pivot = a[c][c];
        det *= pivot;
        for r in c + 1..k {
            let f = a[r][c] / pivot;
            for cc in c..k {
                let v = a[c][cc];
                a[r][cc] -= f * v;
            }
        }
    }
    det
}

/// Finds a supported type whose Cartan matrix equals `cartan` after
/// renumbering the nodes.
fn identify(cartan: &[Vec<i64>]) -> Option<CartanType> {
    let n = cartan.len();
    let types = CartanType::all_of_rank(n);
    if let Some(t) = types.iter().find(|t| t.cartan_matrix() == cartan) {
        return Some(*t);
    }
    types.into_iter().find(|t| {
        let reference = t.cartan_matrix();
        let mut perm = vec![usize::MAX; n];
        let mut used = vec![false; n];
        match_nodes(cartan, &reference, 0, &mut perm, &mut used)
    })
}

fn match_nodes(
    a: &[Vec<i64>],
    b: &[Vec<i64>],
    k: usize,
    perm: &mut [usize],
    used: &mut [bool],
) -> bool {
    let n = a.len();
    if k == n {
        return true;
    }
    for cand in 0..n {
        if used[cand] {
            continue;
        }
        if (0..k).all(|j| a[k][j] == b[cand][perm[j]] && a[j][k] == b[perm[j]][cand]) {
            perm[k] = cand;
            used[cand] = true;
            if match_nodes(a, b, k + 1, perm, used) {
                return true;
            }
            used[cand] = false;
        }
    }
    false
}
