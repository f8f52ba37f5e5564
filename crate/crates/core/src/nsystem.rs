//! Integer n-systems: sorted non-decreasing integer profiles that gain one
//! unit per step, their switch-data encoding, and the extremal system.
//!
//! A profile stores the values P(0), ..., P(Q) on the integer grid; every map
//! we care about is affine with slope 0 or 1 between consecutive integers, so
//! nothing is lost. Switch data records (q_i, k_i, l_i): at time q_i the
//! component at index k_i starts rising and the previous riser has landed at
//! index l_i. The initial record is always (0, n, n).

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    pub n: usize,
    /// values[q][j] = P_{j+1}(q) for 0 <= q <= horizon.
    pub values: Vec<Vec<i64>>,
}

impl Profile {
    pub fn horizon(&self) -> i64 {
        self.values.len() as i64 - 1
    }

    pub fn at(&self, q: i64) -> &[i64] {
        &self.values[q as usize]
    }

    /// 1-based index of the component rising between q and q+1, or None when
    /// the step is not a unit step (invalid profile) or q is the horizon.
    pub fn rising_index(&self, q: i64) -> Option<usize> {
        if q < 0 || q >= self.horizon() {
            return None;
        }
        let (a, b) = (&self.values[q as usize], &self.values[q as usize + 1]);
        let mut rise = None;
        for j in 0..self.n {
            match b[j] - a[j] {
                0 => {}
                1 if rise.is_none() => rise = Some(j + 1),
                _ => return None,
            }
        }
        rise
    }

    /// Checks the three grid conditions: sorted non-negative rows summing to
    /// q, unit steps, and the no-jump-over-distinct-values rule relating
    /// consecutive rising indices.
    pub fn validate(&self) -> Result<(), Error> {
        let n = self.n;
        if n < 2 {
            return Err(Error::Precondition("profile needs n >= 2"));
        }
        if self.values.is_empty() {
            return Err(Error::Precondition("profile needs P(0)"));
        }
        let mut prev_rise: Option<usize> = None;
        for (qu, row) in self.values.iter().enumerate() {
            let q = qu as i64;
            if row.len() != n {
                return Err(Error::BadProfile { q, condition: "row length" });
            }
            if row[0] < 0 {
                return Err(Error::BadProfile { q, condition: "negative entry" });
            }
            if row.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::BadProfile { q, condition: "unsorted" });
            }
            if row.iter().sum::<i64>() != q {
                return Err(Error::BadProfile { q, condition: "sum" });
            }
            if q < self.horizon() {
                let r = match self.rising_index(q) {
                    Some(r) => r,
                    None => {
                        return Err(Error::BadProfile { q, condition: "not a unit step" })
                    }
                };
                if let Some(rp) = prev_rise {
                    if r > rp && self.values[qu][rp - 1] != self.values[qu][r - 1] {
                        return Err(Error::BadProfile {
                            q,
                            condition: "rise jumps over a distinct value",
                        });
                    }
                }
                prev_rise = Some(r);
            }
        }
        Ok(())
    }
}

/// The profile with components floor((q + i - 1) / n): the unique valid one
/// keeping P_n - P_1 <= 1 everywhere.
pub fn extremal(n: usize, horizon: i64) -> Profile {
    assert!(n >= 2 && horizon >= 0);
    let values = (0..=horizon)
        .map(|q| (0..n).map(|i| (q + i as i64) / n as i64).collect())
        .collect();
    Profile { n, values }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SwitchRecord {
    pub q: i64,
    /// 1-based index of the component that starts rising at q.
    pub k: usize,
    /// 1-based index where the previous riser landed.
    pub l: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwitchData {
    pub n: usize,
    pub records: Vec<SwitchRecord>,
}

impl SwitchData {
    pub fn single(n: usize) -> Self {
        SwitchData { n, records: vec![SwitchRecord { q: 0, k: n, l: n }] }
    }
}

fn insert_sorted(frozen: &[i64], v: i64) -> Vec<i64> {
    let mut row = Vec::with_capacity(frozen.len() + 1);
    let pos = frozen.partition_point(|&x| x <= v);
    row.extend_from_slice(&frozen[..pos]);
    row.push(v);
    row.extend_from_slice(&frozen[pos..]);
    row
}

/// Evaluates switch data on [0, horizon], checking the record conditions for
/// every record in range: on each segment the tuple is the frozen components
/// of P(q_i) with the k_i-th replaced by q - q_i + P_{k_i}(q_i), re-sorted.
pub fn eval_switches(sd: &SwitchData, horizon: i64) -> Result<Profile, Error> {
    let n = sd.n;
    if n < 2 {
        return Err(Error::BadSwitchData("n must be >= 2"));
    }
    if horizon < 0 {
        return Err(Error::Precondition("horizon must be >= 0"));
    }
    match sd.records.first() {
        Some(r) if r.q == 0 && r.k == n && r.l == n => {}
        _ => return Err(Error::BadSwitchData("first record must be (0, n, n)")),
    }

    let mut values: Vec<Vec<i64>> = Vec::with_capacity(horizon as usize + 1);
    let mut frozen: Vec<i64> = vec![0; n - 1];
    let mut start_val = 0i64;
    let mut q_start = 0i64;
    let mut k_prev = n;

    for rec in sd.records.iter().skip(1) {
        if rec.q <= q_start {
            return Err(Error::BadSwitchData("switch times must increase"));
        }
        if rec.q > horizon {
            break;
        }
        for q in q_start..rec.q {
            values.push(insert_sorted(&frozen, q - q_start + start_val));
        }
        let landed = rec.q - q_start + start_val;
        let row = insert_sorted(&frozen, landed);
        if rec.k < 1 || rec.l > n || rec.k >= rec.l {
            return Err(Error::BadSwitchData("need 1 <= k < l <= n"));
        }
        if rec.l < k_prev {
            return Err(Error::BadSwitchData("landing index below previous riser"));
        }
        if row[rec.l - 1] != landed {
            return Err(Error::BadSwitchData("landed value not at claimed index"));
        }
        if row[rec.k - 1] >= row[rec.l - 1] {
            return Err(Error::BadSwitchData("new riser must start strictly lower"));
        }
        q_start = rec.q;
        start_val = row[rec.k - 1];
        k_prev = rec.k;
        frozen = row
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != rec.k - 1)
            .map(|(_, &v)| v)
            .collect();
    }
    for q in q_start..=horizon {
        values.push(insert_sorted(&frozen, q - q_start + start_val));
    }
    Ok(Profile { n, values })
}

/// Canonical switch data of a valid profile: segments are maximal intervals
/// on which a single component rises; at each break the landing index is the
/// largest one holding the landed value and the new riser is the smallest
/// index holding the rising value. eval_switches inverts this exactly.
pub fn to_switches(p: &Profile) -> Result<SwitchData, Error> {
    p.validate()?;
    let n = p.n;
    let mut records = vec![SwitchRecord { q: 0, k: n, l: n }];
    let mut q_start = 0i64;
    let mut start_val = 0i64;
    for q in 0..p.horizon() {
        let row = p.at(q);
        let mover = start_val + q - q_start;
        let expect = row.iter().rposition(|&v| v == mover).expect("mover present") + 1;
        let actual = p.rising_index(q).expect("validated profile");
        if actual == expect {
            continue;
        }
        let l = expect;
        let rise_val = row[actual - 1];
        let k = row.iter().position(|&v| v == rise_val).expect("value present") + 1;
        records.push(SwitchRecord { q, k, l });
        q_start = q;
        start_val = rise_val;
    }
    Ok(SwitchData { n, records })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::random_profile;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sd(n: usize, recs: &[(i64, usize, usize)]) -> SwitchData {
        SwitchData {
            n,
            records: recs.iter().map(|&(q, k, l)| SwitchRecord { q, k, l }).collect(),
        }
    }

    #[test]
    fn extremal_values() {
        let p3 = extremal(3, 8);
        assert_eq!(p3.at(6), &[2, 2, 2]);
        assert_eq!(p3.at(7), &[2, 2, 3]);
        assert_eq!(p3.at(8), &[2, 3, 3]);
        p3.validate().unwrap();
        let p2 = extremal(2, 5);
        assert_eq!(p2.at(5), &[2, 3]);
        for q in 0..=5 {
            assert!(p2.at(q)[1] - p2.at(q)[0] <= 1);
        }
    }

    #[test]
    fn validation_catches_bad_rows() {
        let p = Profile { n: 2, values: vec![vec![0, 0], vec![1, 0]] };
        assert!(matches!(
            p.validate(),
            Err(Error::BadProfile { q: 1, condition: "unsorted" })
        ));
        let p = Profile { n: 2, values: vec![vec![0, 1]] };
        assert!(matches!(
            p.validate(),
            Err(Error::BadProfile { q: 0, condition: "sum" })
        ));
    }

    #[test]
    fn tied_jump_is_legal() {
        let p = Profile {
            n: 3,
            values: vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 1, 1], vec![0, 1, 2]],
        };
        p.validate().unwrap();
    }

    #[test]
    fn jump_over_distinct_value_is_not() {
        let p = Profile {
            n: 3,
            values: vec![
                vec![0, 0, 0],
                vec![0, 0, 1],
                vec![0, 0, 2],
                vec![0, 1, 2],
                vec![0, 1, 3],
            ],
        };
        assert!(matches!(
            p.validate(),
            Err(Error::BadProfile { q: 3, condition: "rise jumps over a distinct value" })
        ));
    }

    #[test]
    fn eval_two_component_staircase() {
        let s = sd(2, &[(0, 2, 2), (1, 1, 2), (3, 1, 2), (5, 1, 2)]);
        assert_eq!(eval_switches(&s, 6).unwrap(), extremal(2, 6));
    }

    #[test]
    fn eval_single_record() {
        let p = eval_switches(&SwitchData::single(4), 5).unwrap();
        for q in 0..=5 {
            assert_eq!(p.at(q), &[0, 0, 0, q]);
        }
    }

    #[test]
    fn eval_rejects_bad_records() {
        let s = sd(2, &[(0, 2, 2), (2, 1, 2)]);
        // landing check: at q=2 the riser holds 2 while the claimed index holds it,
        // so shift the claim to a wrong time instead
        assert!(eval_switches(&s, 4).is_ok());
        let s = sd(2, &[(0, 2, 2), (1, 2, 2)]);
        assert!(matches!(eval_switches(&s, 4), Err(Error::BadSwitchData(_))));
        let s = sd(2, &[(1, 1, 2)]);
        assert!(matches!(eval_switches(&s, 4), Err(Error::BadSwitchData(_))));
        let s = sd(3, &[(0, 3, 3), (2, 1, 2)]);
        // landed value 2 sits at index 3, not 2
        assert!(matches!(eval_switches(&s, 4), Err(Error::BadSwitchData(_))));
    }

    #[test]
    fn canonical_switches_of_staircases() {
        let s = to_switches(&extremal(2, 7)).unwrap();
        assert_eq!(
            s.records,
            sd(2, &[(0, 2, 2), (1, 1, 2), (3, 1, 2), (5, 1, 2)]).records
        );
        let s3 = to_switches(&extremal(3, 8)).unwrap();
        let qs: Vec<i64> = s3.records.iter().skip(1).map(|r| r.q).collect();
        assert_eq!(qs, vec![1, 2, 4, 5, 7]);
        assert_eq!(eval_switches(&s3, 8).unwrap(), extremal(3, 8));
    }

    #[test]
    fn single_riser_round_trip() {
        let p = eval_switches(&SwitchData::single(3), 6).unwrap();
        let s = to_switches(&p).unwrap();
        assert_eq!(s, SwitchData::single(3));
    }

    /// Random profile via admissible rising-index walks.
    #[test]
    fn random_walk_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.gen_range(2..=5);
            let horizon = rng.gen_range(0..=30);
            let p = random_profile(&mut rng, n, horizon);
            p.validate().unwrap();
            let s = to_switches(&p).unwrap();
            let back = eval_switches(&s, horizon).unwrap();
            assert_eq!(back, p);
        }
    }

    #[test]
    fn extremal_is_the_only_tight_profile() {
        // depth-first enumeration of all valid 2-component profiles to Q=8
        fn dfs(values: &mut Vec<Vec<i64>>, prev: Option<usize>, out: &mut Vec<Profile>) {
            if values.len() == 9 {
                out.push(Profile { n: 2, values: values.clone() });
                return;
            }
            let row = values.last().unwrap().clone();
            for r in 1..=2usize {
                let top = r == 2 || row[r] > row[r - 1];
                if !top {
                    continue;
                }
                if let Some(rp) = prev {
                    if r > rp && row[rp - 1] != row[r - 1] {
                        continue;
                    }
                }
                let mut next = row.clone();
                next[r - 1] += 1;
                values.push(next);
                dfs(values, Some(r), out);
                values.pop();
            }
        }
        let mut all = Vec::new();
        dfs(&mut vec![vec![0, 0]], None, &mut all);
        let tight: Vec<&Profile> = all
            .iter()
            .filter(|p| (0..=8).all(|q| p.at(q)[1] - p.at(q)[0] <= 1))
            .collect();
        assert_eq!(tight.len(), 1);
        assert_eq!(*tight[0], extremal(2, 8));
        for p in &all {
            p.validate().unwrap();
        }
    }
}
