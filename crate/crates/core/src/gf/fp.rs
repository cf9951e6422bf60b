//! Polynomials over a prime field, used only while building field tables.

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    trim(&mut a);
    let dm = m.len() - 1;
    let lc_inv = inv_mod(m[dm], p);
    while a.len() > dm {
        let k = a.len() - 1;
        let c = a[k] * lc_inv % p;
        if c != 0 {
            for j in 0..=dm {
                let idx = k - dm + j;
                a[idx] = (a[idx] + p - c * m[j] % p) % p;
            }
        }
        a.pop();
        trim(&mut a);
    }
    a
}

fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    rem(&prod, m, p)
}

fn gcd_degree(a: &[u64], b: &[u64], p: u64) -> usize {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a.len().saturating_sub(1)
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let r = f.len() - 1;
    let x = vec![0u64, 1];
    let mut h = x.clone();
    for _ in 0..r / 2 {
        // h <- h^p mod f
        let mut acc = vec![1u64];
        let mut base = h.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &base, f, p);
            }
            base = mulmod(&base, &base, f, p);
            e >>= 1;
        }
        h = acc;
        let mut d = h.clone();
        d.resize(d.len().max(2), 0);
        d[1] = (d[1] + p - 1) % p;
        if gcd_degree(f, &d, p) != 0 {
            return false;
        }
    }
    true
}

/// Lexicographically least monic irreducible polynomial of degree `r` over `F_p`,
/// comparing coefficients from the constant term upward.
pub(crate) fn least_irreducible(p: u32, r: u32) -> Vec<u32> {
    if r == 1 {
        return vec![0, 1];
    }
    let p64 = p as u64;
    let total = p64.pow(r);
    for k in 0..total {
        // c_0 is the most significant digit of k
        let mut f = vec![0u64; r as usize + 1];
        let mut v = k;
        for i in (0..r as usize).rev() {
            f[i] = v % p64;
            v /= p64;
        }
        f[r as usize] = 1;
        if f[0] != 0 && is_irreducible(&f, p64) {
            return f.iter().map(|&c| c as u32).collect();
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Arithmetic on packed elements `sum c_i p^i` of `F_p[t]/(m)`.
pub(crate) struct PackedArith {
    p: u64,
    r: usize,
    modulus: Vec<u64>,
    pub q: u32,
}

impl PackedArith {
    pub fn new(p: u32, modulus: Vec<u32>) -> Self {
        let r = modulus.len() - 1;
        PackedArith {
            p: p as u64,
            r,
            modulus: modulus.iter().map(|&c| c as u64).collect(),
            q: (p as u64).pow(r as u32) as u32,
        }
    }

    fn unpack(&self, mut v: u32) -> Vec<u64> {
        let mut out = vec![0u64; self.r];
        for c in out.iter_mut() {
            *c = v as u64 % self.p;
            v /= self.p as u32;
        }
        out
    }

    fn pack(&self, c: &[u64]) -> u32 {
        c.iter().rev().fold(0u64, |acc, &x| acc * self.p + x) as u32
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if self.r == 1 {
            return ((a as u64 * b as u64) % self.p) as u32;
        }
        let m = mulmod(&self.unpack(a), &self.unpack(b), &self.modulus, self.p);
        let mut c = m;
        c.resize(self.r, 0);
        self.pack(&c)
    }

    /// Multiplication by the class of `t`.
    pub fn mul_by_t(&self, a: u32) -> u32 {
        let mut c = [0u64; 32];
        let mut v = a;
        for slot in c.iter_mut().take(self.r) {
            *slot = v as u64 % self.p;
            v /= self.p as u32;
        }
        let top = c[self.r - 1];
        let mut out = 0u64;
        for i in (0..self.r).rev() {
            let shifted = if i == 0 { 0 } else { c[i - 1] };
            let d = (shifted + self.p * self.p - top * self.modulus[i] % self.p) % self.p;
            out = out * self.p + d;
        }
        out as u32
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// Least primitive element, trying `t` first for proper extensions.
    pub fn primitive_element(&self) -> u32 {
        let order = self.q as u64 - 1;
        if order == 1 {
            return 1;
        }
        let mut primes = Vec::new();
        let mut m = order;
        let mut d = 2u64;
        while d * d <= m {
            if m.is_multiple_of(d) {
                primes.push(d);
                while m.is_multiple_of(d) {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            primes.push(m);
        }
        let is_primitive = |c: u32| primes.iter().all(|&l| self.pow(c, order / l) != 1);
        if self.r > 1 && is_primitive(self.p as u32) {
            return self.p as u32;
        }
        (2..self.q).find(|&c| is_primitive(c)).expect("multiplicative group is cyclic")
    }
}
