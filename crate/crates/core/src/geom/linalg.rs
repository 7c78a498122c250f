//! Small dense linear algebra over [`Scalar`].

use crate::field::{FieldDescriptor, Scalar};

pub type Mat3 = [[Scalar; 3]; 3];
pub type Vec3 = [Scalar; 3];

pub fn dot3(a: &Vec3, b: &Vec3) -> Scalar {
    &(&(&a[0] * &b[0]) + &(&a[1] * &b[1])) + &(&a[2] * &b[2])
}

pub fn cross3(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
        &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
        &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
    ]
}

pub fn det3(m: &Mat3) -> Scalar {
    let rows = [m[1].clone(), m[2].clone()];
    dot3(&m[0], &cross3(&rows[0], &rows[1]))
}

pub fn det_cols3(a: &Vec3, b: &Vec3, c: &Vec3) -> Scalar {
    dot3(a, &cross3(b, c))
}

pub fn mat_vec3(m: &Mat3, v: &Vec3) -> Vec3 {
    [dot3(&m[0], v), dot3(&m[1], v), dot3(&m[2], v)]
}

pub fn transpose3(m: &Mat3) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| m[j][i].clone()))
}

pub fn mat_mul3(a: &Mat3, b: &Mat3) -> Mat3 {
    let bt = transpose3(b);
    std::array::from_fn(|i| std::array::from_fn(|j| dot3(&a[i], &bt[j])))
}

/// Adjugate: `m * adj(m) = det(m) * I`.
pub fn adjugate3(m: &Mat3) -> Mat3 {
    let c0 = cross3(&m[1], &m[2]);
    let c1 = cross3(&m[2], &m[0]);
    let c2 = cross3(&m[0], &m[1]);
    transpose3(&[c0, c1, c2])
}

/// Matrix whose columns are the given vectors.
pub fn from_columns3(cols: [&Vec3; 3]) -> Mat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| cols[j][i].clone()))
}

pub fn scale3(v: &Vec3, s: &Scalar) -> Vec3 {
    std::array::from_fn(|i| &v[i] * s)
}

/// Basis of the right null space of `rows` (each of length `ncols`), by
/// reduction to row echelon form. Basis vectors have a 1 in their free
/// column.
pub fn null_space(rows: &[Vec<Scalar>], ncols: usize, field: &FieldDescriptor) -> Vec<Vec<Scalar>> {
    let mut m: Vec<Vec<Scalar>> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pr);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for j in c..ncols {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..ncols {
                    let t = &f * &m[r][j];
                    m[i][j] = &m[i][j] - &t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![field.zero(); ncols];
            v[free] = field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&m[row][free];
            }
            v
        })
        .collect()
}

pub fn rank(rows: &[Vec<Scalar>], ncols: usize, field: &FieldDescriptor) -> usize {
    ncols - null_space(rows, ncols, field).len()
}
