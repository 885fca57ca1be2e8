use std::collections::BTreeMap;

use crate::error::Result;
use crate::fibers::FiberPartition;

/// Constant terms c_{ij0} for i ≤ j, from the parity of s and the
/// characteristic.
///
/// In characteristic 2, or when s is even, every fiber is closed under
/// negation: c_{ii0} = s and the rest vanish. When p is odd and s is odd,
/// −A_i is another fiber A_j and the single nonzero constant in row i is
/// c_{ij0} = s.
pub fn classify_c0(partition: &FiberPartition) -> Result<BTreeMap<(usize, usize), u64>> {
    let n = partition.n();
    let s = partition.s() as u64;
    let mut out = BTreeMap::new();
    for i in 1..=n {
        for j in i..=n {
            out.insert((i, j), 0);
        }
    }
    if partition.p() == 2 || s.is_multiple_of(2) {
        for i in 1..=n {
            out.insert((i, i), s);
        }
    } else {
        for i in 1..=n {
            let j = partition.negation_fiber(i)?;
            out.insert((i.min(j), i.max(j)), s);
        }
    }
    Ok(out)
}
