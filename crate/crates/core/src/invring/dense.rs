use crate::exactfield::{inv_mod, mul_mod, sub_mod};

/// Dense echelon rows modulo `p`, each reduced against the earlier ones.
pub(crate) struct DenseBasis {
    p: u64,
    rows: Vec<(usize, Vec<u64>)>,
}

impl DenseBasis {
    pub fn new(p: u64) -> Self {
        DenseBasis { p, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        let p = self.p;
        for (col, row) in &self.rows {
            let f = v[*col];
            if f != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    if *r != 0 {
                        *x = sub_mod(*x, mul_mod(f, *r, p), p);
                    }
                }
            }
        }
        let Some(col) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(v[col], p);
        for x in v.iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        self.rows.push((col, v));
        true
    }
}

