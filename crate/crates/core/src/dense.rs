//! Small dense square matrices, used only to cross-check closed-form entries.

#[derive(Clone, Debug, PartialEq)]
pub struct Dense {
    n: usize,
    data: Vec<f64>,
}

impl Dense {
    pub fn zeros(n: usize) -> Self {
        Dense { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Dense::diag(&vec![1.0; n])
    }

    pub fn diag(v: &[f64]) -> Self {
        let mut m = Dense::zeros(v.len());
        for (i, x) in v.iter().enumerate() {
            m.set(i, i, *x);
        }
        m
    }

    /// Unilateral shift `U e_i = e_{i+1}` cut to `n x n`.
    pub fn shift(n: usize) -> Self {
        let mut m = Dense::zeros(n);
        for i in 1..n {
            m.set(i, i - 1, 1.0);
        }
        m
    }


    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Dense::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn add(&self, o: &Dense) -> Self {
        Dense { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Dense) -> Self {
        Dense { n: self.n, data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }


    pub fn mul(&self, o: &Dense) -> Self {
        let n = self.n;
        let mut out = Dense::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * o.get(k, j);
                }
            }
        }
        out
    }

    /// Max entrywise difference over the leading `m x m` block.
    pub fn max_diff(&self, o: &Dense, m: usize) -> f64 {
        let mut r = 0.0f64;
        for i in 0..m {
            for j in 0..m {
                r = r.max((self.get(i, j) - o.get(i, j)).abs());
            }
        }
        r
    }

    /// `max_diff` over the leading `m x m` block, divided by `max(1, largest |entry|)` of `self` there.
    pub fn scaled_diff(&self, o: &Dense, m: usize) -> f64 {
        let mut scale = 1.0f64;
        for i in 0..m {
            for j in 0..m {
                scale = scale.max(self.get(i, j).abs());
            }
        }
        self.max_diff(o, m) / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_products() {
        let u = Dense::shift(4);
        let uu = u.transpose().mul(&u);
        // U*U on a section is the identity except the last diagonal slot
        assert_eq!(uu.get(0, 0), 1.0);
        assert_eq!(uu.get(3, 3), 0.0);
        assert_eq!(Dense::identity(3).mul(&Dense::diag(&[1.0, 2.0, 3.0])).get(2, 2), 3.0);
    }
}
