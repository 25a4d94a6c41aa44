//! Dirichlet characters stored as exponent vectors over generators of
//! `(Z/qZ)*`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::{factorize, gcd};

fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// `e^{2πi k/n}` with exact values at the quarter turns.
fn root_of_unity(k: u64, n: u64) -> Complex64 {
    let k = k % n;
    match (4 * k) % n == 0 {
        true => match 4 * k / n {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        },
        false => Complex64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64),
    }
}

/// Smallest primitive root modulo an odd prime power.
fn primitive_root_prime_power(p: u64, e: u32) -> u64 {
    let phi_p = p - 1;
    let prime_factors: Vec<u64> = factorize(phi_p).into_iter().map(|(r, _)| r).collect();
    let mut g = 2;
    loop {
        if prime_factors.iter().all(|&r| pow_mod(g, phi_p / r, p) != 1) {
            break;
        }
        g += 1;
    }
    if e >= 2 && pow_mod(g, p - 1, p * p) == 1 {
        g += p;
    }
    g
}

/// Lift `x mod m1` to the unique residue mod `m1·m2` that is `1 mod m2`.
fn crt_lift(x: u64, m1: u64, m2: u64) -> u64 {
    let modulus = m1 * m2;
    (0..m1)
        .map(|j| 1 + j * m2)
        .find(|&y| y % m1 == x % m1)
        .unwrap_or(1)
        % modulus
}

/// The unit group mod `q` as a product of cyclic factors, with a discrete
/// logarithm table for every unit.
#[derive(Debug, Clone)]
pub struct CharacterGroup {
    modulus: u64,
    generators: Vec<u64>,
    orders: Vec<u64>,
    logs: Vec<Option<Vec<u64>>>,
}

impl CharacterGroup {
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus == 0 || modulus > 1_000_000 {
            return Err(Error::domain(format!("modulus {modulus} out of range")));
        }
        let mut generators = Vec::new();
        let mut orders = Vec::new();
        for (p, e) in factorize(modulus) {
            let pe = p.pow(e);
            let rest = modulus / pe;
            let local: Vec<(u64, u64)> = if p == 2 {
                match e {
                    1 => vec![],
                    2 => vec![(3, 2)],
                    _ => vec![(pe - 1, 2), (5, pe / 4)],
                }
            } else {
                vec![(primitive_root_prime_power(p, e), pe / p * (p - 1))]
            };
            for (g, order) in local {
                generators.push(crt_lift(g, pe, rest));
                orders.push(order);
            }
        }
        let mut logs = vec![None; modulus as usize];
        let mut exps = vec![0u64; generators.len()];
        loop {
            let mut x = 1 % modulus;
            for (g, &a) in generators.iter().zip(&exps) {
                x = x * pow_mod(*g, a, modulus) % modulus;
            }
            logs[x as usize] = Some(exps.clone());
            if !advance(&mut exps, &orders) {
                break;
            }
        }
        Ok(CharacterGroup { modulus, generators, orders, logs })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Orders of the cyclic factors, in generator order.
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// Character with `χ(g_i) = e^{2πi a_i / n_i}`.
    pub fn character(&self, exponents: &[u64]) -> Result<DirichletCharacter> {
        if exponents.len() != self.orders.len()
            || exponents.iter().zip(&self.orders).any(|(a, n)| a >= n)
        {
            return Err(Error::domain(format!(
                "exponent vector {exponents:?} does not match orders {:?}",
                self.orders
            )));
        }
        let lcm = self.orders.iter().fold(1u64, |acc, &n| acc / gcd(acc, n) * n);
        let values: Vec<Complex64> = self
            .logs
            .iter()
            .map(|log| match log {
                None => Complex64::new(0.0, 0.0),
                Some(l) => {
                    let k: u64 = l
                        .iter()
                        .zip(exponents)
                        .zip(&self.orders)
                        .map(|((x, a), n)| x * a % n * (lcm / n))
                        .sum();
                    root_of_unity(k, lcm)
                }
            })
            .collect();
        let q = self.modulus;
        let parity = if q <= 2 || values[(q - 1) as usize].re > 0.0 { 0 } else { 1 };
        let primitive = self.is_primitive_table(&values);
        let series = rotate_for_series(&values);
        Ok(DirichletCharacter {
            modulus: q,
            exponents: exponents.to_vec(),
            orders: self.orders.clone(),
            series,
            values,
            parity,
            primitive,
        })
    }

    /// Every character mod `q`, exponent vectors in lexicographic order.
    pub fn characters(&self) -> Vec<DirichletCharacter> {
        let mut out = Vec::new();
        let mut exps = vec![0u64; self.orders.len()];
        loop {
            out.push(self.character(&exps).expect("exponents within orders"));
            if !advance(&mut exps, &self.orders) {
                break;
            }
        }
        out
    }

    pub fn primitive_characters(&self) -> Vec<DirichletCharacter> {
        self.characters().into_iter().filter(|c| c.primitive).collect()
    }

    /// `χ` is induced from `q/p` iff it is trivial on the units `≡ 1 mod q/p`.
    fn is_primitive_table(&self, values: &[Complex64]) -> bool {
        let q = self.modulus;
        if q == 1 {
            return true;
        }
        factorize(q).into_iter().all(|(p, _)| {
            let d = q / p;
            (0..p)
                .map(|j| 1 + j * d)
                .filter(|&n| gcd(n, q) == 1)
                .any(|n| (values[(n % q) as usize] - 1.0).norm() > 1e-9)
        })
    }
}

/// `[χ(1), …, χ(q-1), χ(q)]`, the layout the periodic series expects.
fn rotate_for_series(values: &[Complex64]) -> Vec<Complex64> {
    let mut out = values.to_vec();
    out.rotate_left(1);
    out
}

fn advance(exps: &mut [u64], orders: &[u64]) -> bool {
    for i in (0..exps.len()).rev() {
        exps[i] += 1;
        if exps[i] < orders[i] {
            return true;
        }
        exps[i] = 0;
    }
    false
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DirichletCharacter {
    modulus: u64,
    exponents: Vec<u64>,
    orders: Vec<u64>,
    #[serde(skip)]
    values: Vec<Complex64>,
    #[serde(skip)]
    series: Vec<Complex64>,
    parity: u8,
    primitive: bool,
}

impl DirichletCharacter {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// `0` for even characters, `1` for odd ones.
    pub fn parity(&self) -> u8 {
        self.parity
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive
    }

    pub fn is_real(&self) -> bool {
        self.values.iter().all(|v| v.im == 0.0)
    }

    /// Values `χ(0), …, χ(q-1)`.
    pub fn table(&self) -> &[Complex64] {
        &self.values
    }

    pub(crate) fn table_shifted(&self) -> &[Complex64] {
        &self.series
    }

    pub fn value(&self, n: i64) -> Complex64 {
        let q = self.modulus as i64;
        self.values[n.rem_euclid(q) as usize]
    }

    pub fn conjugate(&self) -> DirichletCharacter {
        DirichletCharacter {
            exponents: self
                .exponents
                .iter()
                .zip(&self.orders)
                .map(|(&a, &n)| (n - a) % n)
                .collect(),
            values: self.values.iter().map(|v| v.conj()).collect(),
            series: self.series.iter().map(|v| v.conj()).collect(),
            ..self.clone()
        }
    }

    /// `τ(χ) = Σ_a χ(a) e^{2πi a/q}` by direct summation.
    pub fn gauss_sum(&self) -> Complex64 {
        let q = self.modulus;
        (1..q)
            .map(|a| self.values[a as usize] * root_of_unity(a, q))
            .sum()
    }

    /// Short label such as `q5:e1` used in reports.
    pub fn label(&self) -> String {
        let exps: Vec<String> = self.exponents.iter().map(|e| e.to_string()).collect();
        format!("q{}:e{}", self.modulus, exps.join("."))
    }
}

/// Whether `d` is a fundamental discriminant other than 1.
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let squarefree = |n: u64| n > 0 && factorize(n).iter().all(|&(_, e)| e == 1);
    match d.rem_euclid(4) {
        1 => squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
fn jacobi(a: i64, n: u64) -> i32 {
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut result = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Kronecker symbol `(d/n)` for `n ≥ 1`.
pub fn kronecker(d: i64, n: u64) -> i32 {
    let mut n = n;
    let mut result = 1;
    while n % 2 == 0 {
        n /= 2;
        result *= match d.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => return 0,
        };
    }
    result * jacobi(d, n)
}

/// The primitive real character `n ↦ (D/n)` of modulus `|D|`.
pub fn quadratic_character(d: i64) -> Result<DirichletCharacter> {
    if !is_fundamental_discriminant(d) {
        return Err(Error::NotFundamental(d));
    }
    let q = d.unsigned_abs();
    let group = CharacterGroup::new(q)?;
    let exps: Vec<u64> = group
        .generators()
        .iter()
        .zip(group.orders())
        .map(|(&g, &n)| if kronecker(d, g) == 1 { 0 } else { n / 2 })
        .collect();
    let chi = group.character(&exps)?;
    debug_assert!((1..q).all(|n| (chi.value(n as i64).re - kronecker(d, n) as f64).abs() < 1e-12));
    Ok(chi)
}

/// All primitive characters mod `q`, in enumeration order.
pub fn primitive_characters(q: u64) -> Result<Vec<DirichletCharacter>> {
    Ok(CharacterGroup::new(q)?.primitive_characters())
}
