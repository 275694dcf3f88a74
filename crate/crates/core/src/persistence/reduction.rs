//! Boundary-matrix reduction over the two-element field.
//!
//! Columns are cells in filtration order; column `j` lists the (sorted) row
//! indices of its faces, all smaller than `j`. Reduction runs dimension by
//! dimension from the top down with clearing: a column whose index already
//! appeared as the pivot of a higher-dimensional column is known to reduce to
//! zero and is skipped.

/// Result of reducing a filtered boundary matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pairing {
    /// `(birth_cell, death_cell)` index pairs.
    pub pairs: Vec<(usize, usize)>,
    /// Cells that create a class never killed.
    pub essential: Vec<usize>,
}

fn add_into(target: &mut Vec<usize>, other: &[usize]) {
    let mut out = Vec::with_capacity(target.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() && j < other.len() {
        match target[i].cmp(&other[j]) {
            std::cmp::Ordering::Less => {
                out.push(target[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(other[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&target[i..]);
    out.extend_from_slice(&other[j..]);
    *target = out;
}

/// Reduces the matrix and returns the persistence pairing. `dims[j]` is the
/// dimension of cell `j`.
pub fn reduce(boundaries: &[Vec<usize>], dims: &[usize]) -> Pairing {
    assert_eq!(boundaries.len(), dims.len());
    let n = boundaries.len();
    let max_dim = dims.iter().copied().max().unwrap_or(0);

    // pivot_owner[row] = reduced column whose lowest entry is `row`.
    let mut pivot_owner: Vec<Option<usize>> = vec![None; n];
    let mut reduced: Vec<Option<Vec<usize>>> = vec![None; n];
    let mut cleared = vec![false; n];

    for dim in (0..=max_dim).rev() {
        for j in (0..n).filter(|&j| dims[j] == dim) {
            if cleared[j] {
                continue;
            }
            let mut col = boundaries[j].clone();
            while let Some(&low) = col.last() {
                match pivot_owner[low] {
                    Some(k) => add_into(&mut col, reduced[k].as_ref().unwrap()),
                    None => break,
                }
            }
            if let Some(&low) = col.last() {
                pivot_owner[low] = Some(j);
                cleared[low] = true;
                reduced[j] = Some(col);
            }
        }
    }

    let mut pairs = Vec::new();
    let mut essential = Vec::new();
    for j in 0..n {
        if let Some(owner) = pivot_owner[j] {
            pairs.push((j, owner));
        } else if reduced[j].is_none() {
            essential.push(j);
        }
    }
    Pairing { pairs, essential }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_difference() {
        let mut a = vec![1, 3, 5];
        add_into(&mut a, &[3, 4, 6]);
        assert_eq!(a, vec![1, 4, 5, 6]);
    }

    #[test]
    fn filled_triangle() {
        // vertices 0,1,2; edges 3=(0,1) 4=(1,2) 5=(0,2); face 6.
        let b = vec![vec![], vec![], vec![], vec![0, 1], vec![1, 2], vec![0, 2], vec![3, 4, 5]];
        let dims = [0, 0, 0, 1, 1, 1, 2];
        let p = reduce(&b, &dims);
        assert_eq!(p.pairs, vec![(1, 3), (2, 4), (5, 6)]);
        assert_eq!(p.essential, vec![0]);
    }

    #[test]
    fn hollow_square() {
        let b = vec![vec![], vec![], vec![], vec![], vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]];
        let dims = [0, 0, 0, 0, 1, 1, 1, 1];
        let p = reduce(&b, &dims);
        assert_eq!(p.pairs, vec![(1, 4), (2, 5), (3, 6)]);
        assert_eq!(p.essential, vec![0, 7]);
    }
}
