use crate::arith::Field;

/// Whether the augmented system `[A | b]` (last column is `b`) has a
/// solution, by Gauss-Jordan elimination over `F`.
pub(crate) fn is_consistent<F: Field>(mut rows: Vec<Vec<F>>) -> bool {
    let Some(width) = rows.first().map(Vec::len) else {
        return true;
    };
    let ncols = width - 1;
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].inv().expect("nonzero pivot");
        let pivot_row: Vec<F> = rows[rank].iter().map(|x| x.mul(&inv)).collect();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !p.is_zero() {
                    *x = x.sub(&factor.mul(p));
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows[rank..].iter().all(|row| row[ncols].is_zero())
}
