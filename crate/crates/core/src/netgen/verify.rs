use super::UnitSquarePointSet;
use crate::error::{Error, Result};

/// Checks the (0,m,2)-net property: every elementary interval of volume
/// `b^-m` holds exactly one point. Membership uses the integer numerators
/// only, so points sitting on interval boundaries are assigned exactly.
///
/// The points may carry more digits than `m` (sequence blocks generated at a
/// larger depth); only the leading digits matter.
pub fn verify_net(points: &UnitSquarePointSet, m: u32) -> Result<bool> {
    let b = points.base();
    let expected = b.power(m)?;
    if points.len() as u64 != expected {
        return Err(Error::SizeMismatch {
            expected: expected as usize,
            found: points.len(),
        });
    }
    let depth = points.depth();
    if depth < m {
        return Err(Error::DimensionMismatch(format!(
            "points carry {depth} digits, net property at m = {m} needs at least {m}"
        )));
    }
    let mut occupied = vec![false; expected as usize];
    for d1 in 0..=m {
        let d2 = m - d1;
        let shift1 = b.power(depth - d1)?;
        let shift2 = b.power(depth - d2)?;
        let cells2 = b.power(d2)?;
        occupied.iter_mut().for_each(|o| *o = false);
        for &(u1, u2) in points.numerators() {
            let cell = (u1 / shift1) * cells2 + u2 / shift2;
            let slot = &mut occupied[cell as usize];
            if *slot {
                return Ok(false);
            }
            *slot = true;
        }
    }
    // b^m points without collisions fill all b^m cells exactly once.
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netgen::{
        digital_net, digital_sequence_prefix, identity_matrix, pascal_matrix, DigitalNetSpec,
        PrimeBase,
    };

    fn spec(b: u64, m: u32, pascal: bool) -> DigitalNetSpec {
        let base = PrimeBase::new(b).unwrap();
        let c2 = if pascal {
            pascal_matrix(base, m as usize).unwrap()
        } else {
            identity_matrix(base, m as usize).unwrap()
        };
        DigitalNetSpec::new(base, m, identity_matrix(base, m as usize).unwrap(), c2).unwrap()
    }

    #[test]
    fn pascal_net_passes() {
        assert!(verify_net(&digital_net(&spec(2, 2, true)).unwrap(), 2).unwrap());
    }

    #[test]
    fn identity_pair_fails() {
        assert!(!verify_net(&digital_net(&spec(2, 2, false)).unwrap(), 2).unwrap());
    }

    #[test]
    fn single_point_is_a_net() {
        let b = PrimeBase::new(2).unwrap();
        let p = UnitSquarePointSet::from_numerators(b, 0, vec![(0, 0)]).unwrap();
        assert!(verify_net(&p, 0).unwrap());
        let q = UnitSquarePointSet::from_numerators(b, 3, vec![(5, 7)]).unwrap();
        assert!(verify_net(&q, 0).unwrap());
    }

    #[test]
    fn size_mismatch() {
        let net = digital_net(&spec(2, 3, true)).unwrap();
        assert_eq!(
            verify_net(&net, 2),
            Err(Error::SizeMismatch {
                expected: 4,
                found: 8
            })
        );
    }

    #[test]
    fn other_prime_bases() {
        for (b, max_m) in [(3u64, 6u32), (5, 4), (7, 3)] {
            for m in 1..=max_m {
                let net = digital_net(&spec(b, m, true)).unwrap();
                assert!(verify_net(&net, m).unwrap(), "b={b} m={m}");
            }
        }
    }

    #[test]
    fn sequence_blocks_are_nets() {
        let b = PrimeBase::new(2).unwrap();
        let depth = 10;
        let seq = digital_sequence_prefix(b, 1 << depth, depth).unwrap();
        for m in 0..=6u32 {
            let n = 1usize << m;
            for k in 0..=3 {
                let blk = seq.block(k * n, n).unwrap();
                assert!(verify_net(&blk, m).unwrap(), "m={m} k={k}");
            }
        }
    }

    #[test]
    fn duplicated_point_set_fails() {
        let b = PrimeBase::new(2).unwrap();
        let p = UnitSquarePointSet::from_numerators(b, 1, vec![(0, 0), (0, 0)]).unwrap();
        assert!(!verify_net(&p, 1).unwrap());
    }
}
