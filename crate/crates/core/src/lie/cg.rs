//! Clebsch–Gordan coefficients in the Condon–Shortley convention.
//!
//! Coefficients for a fixed (j1, j2, j) are generated as a block: the
//! stretched state |j,j⟩ is found from the two-term recursion that
//! expresses J₊|j,j⟩ = 0, normalized with the Condon–Shortley sign
//! (⟨j1, m1=j1; j2, j−j1 | j, j⟩ > 0), and lower-m states follow by
//! repeated application of J₋ = J₁₋ + J₂₋.

/// ⟨j1 m1; j2 m2 | j, m1+m2⟩ with all quantum numbers doubled.
///
/// Inadmissible quantum numbers return 0 by contract.
pub fn clebsch_gordan(two_j1: u32, two_j2: u32, two_j: u32, two_m1: i32, two_m2: i32) -> f64 {
    if !admissible(two_j1, two_j2, two_j, two_m1, two_m2) {
        return 0.0;
    }
    let table = CgBlock::new(two_j1, two_j2, two_j);
    table.get(two_m1, two_m2)
}

fn admissible(two_j1: u32, two_j2: u32, two_j: u32, two_m1: i32, two_m2: i32) -> bool {
    let (j1, j2, j) = (two_j1 as i32, two_j2 as i32, two_j as i32);
    if j < (j1 - j2).abs() || j > j1 + j2 {
        return false;
    }
    // j1+j2+j must be an even doubled integer (integer total).
    if (j1 + j2 + j) % 2 != 0 {
        return false;
    }
    two_m1.abs() <= j1
        && two_m2.abs() <= j2
        && (two_m1 + two_m2).abs() <= j
        && (two_m1 - j1) % 2 == 0
        && (two_m2 - j2) % 2 == 0
}

/// All coefficients ⟨j1 m1; j2 m2 | j m⟩ for fixed (j1, j2, j).
pub struct CgBlock {
    two_j1: u32,
    two_j: u32,
    /// rows: m from j down to −j; cols: m1 from −j1 up to j1.
    rows: Vec<Vec<f64>>,
}

impl CgBlock {
    pub fn new(two_j1: u32, two_j2: u32, two_j: u32) -> Self {
        let j1 = two_j1 as i32;
        let j2 = two_j2 as i32;
        let j = two_j as i32;
        assert!(j >= (j1 - j2).abs() && j <= j1 + j2 && (j1 + j2 + j) % 2 == 0);
        let n1 = (two_j1 + 1) as usize;

        // Stretched state |j,j⟩: coefficients over m1, with m2 = j − m1.
        let mut top = vec![0.0f64; n1];
        let m1_min = (-j1).max(j - j2);
        let mut two_m1 = j1;
        top[m1_index(j1, two_m1)] = 1.0;
        while two_m1 > m1_min {
            // c(m1−1)·⟨J₁₊ from m1−1⟩ = −c(m1)·⟨J₂₊ from (j−m1)⟩
            let up1 = ladder_factor(j1, two_m1 - 2); // sqrt((j1−(m1−1))(j1+m1))
            let up2 = ladder_factor(j2, j - two_m1); // sqrt((j2−(j−m1))(j2+j−m1+1))
            let c_next = top[m1_index(j1, two_m1)];
            two_m1 -= 2;
            top[m1_index(j1, two_m1)] = -c_next * up2 / up1;
        }
        let norm: f64 = top.iter().map(|c| c * c).sum::<f64>().sqrt();
        for c in top.iter_mut() {
            *c /= norm;
        }
        // Condon–Shortley: the m1 = min(j1, j+j2) = j1 coefficient is +1
        // before normalization, so the sign is already fixed.

        let mut rows = vec![top];
        let mut two_m = j;
        while two_m > -j {
            let prev = rows.last().unwrap().clone();
            let mut next = vec![0.0f64; n1];
            // |j,m−1⟩ = (J₁₋ + J₂₋)|j,m⟩ / sqrt((j+m)(j−m+1)/4)  (doubled units)
            let denom = ladder_factor(j, two_m - 2);
            for (k, &c) in prev.iter().enumerate() {
                if c == 0.0 {
                    continue;
                }
                let tm1 = -j1 + 2 * k as i32;
                let tm2 = two_m - tm1;
                // J₁₋ |m1⟩ → sqrt((j1+m1)(j1−m1+1)) |m1−1⟩
                let f1 = ladder_factor(j1, tm1 - 2);
                if tm1 - 2 >= -j1 {
                    next[m1_index(j1, tm1 - 2)] += c * f1 / denom;
                }
                let f2 = ladder_factor(j2, tm2 - 2);
                if (tm2 - 2).abs() <= j2 && f2 > 0.0 {
                    next[m1_index(j1, tm1)] += c * f2 / denom;
                }
            }
            rows.push(next);
            two_m -= 2;
        }

        CgBlock {
            two_j1,
            two_j,
            rows,
        }
    }

    pub fn get(&self, two_m1: i32, two_m2: i32) -> f64 {
        let two_m = two_m1 + two_m2;
        let j = self.two_j as i32;
        if two_m.abs() > j || two_m1.abs() > self.two_j1 as i32 {
            return 0.0;
        }
        let row = ((j - two_m) / 2) as usize;
        self.rows[row][m1_index(self.two_j1 as i32, two_m1)]
    }
}

fn m1_index(two_j1: i32, two_m1: i32) -> usize {
    ((two_m1 + two_j1) / 2) as usize
}

/// sqrt((j − m)(j + m + 1)) for the raising action from m, doubled inputs.
fn ladder_factor(two_j: i32, two_m: i32) -> f64 {
    let a = (two_j - two_m) as f64 / 2.0;
    let b = (two_j + two_m + 2) as f64 / 2.0;
    if a <= 0.0 || b <= 0.0 {
        0.0
    } else {
        (a * b).sqrt()
    }
}
