//! Closed-form numerics of the construction: contracted curve classes,
//! cubic intersection forms and the Euler-number bookkeeping.

use serde::Serialize;

/// Exceptional classes Ê, one per singular point of the base-locus threefold.
pub const EXCEPTIONAL_SLOTS: usize = 10;
/// Exceptional classes F over the nodes of the quintic.
pub const NODE_SLOTS: usize = 46;

/// Hodge numbers and Euler number of the small resolution, as published
/// constants (not computed here).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Constants {
    pub h11: i64,
    pub h12: i64,
    pub euler: i64,
}

pub const CONSTANTS: Constants = Constants { h11: 2, h12: 56, euler: -108 };

/// A class d·l̂ − Σ mᵢÊᵢ − Σ nⱼFⱼ solving the contraction equations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContractedClass {
    pub d: i64,
    /// Nonzero mᵢ, descending.
    pub multiplicities: Vec<i64>,
    /// Σ nⱼ with every nⱼ ∈ {0, 1}.
    pub sum_n: i64,
    /// Which of the four contracted families the solution belongs to.
    pub case: char,
    pub class: String,
    pub annotation: Option<String>,
}

/// Every integer solution of Σmᵢ² = d² + d + 1, Σmᵢ = 4d − 1, Σnⱼ = 4 − d
/// over ten m-slots and 46 n-slots with nⱼ ∈ {0, 1}.
///
/// 0 ≤ Σn ≤ 46 confines d to [−42, 4]; for each d the multiplicities are
/// enumerated as non-increasing sequences with |mᵢ| ≤ √(d² + d + 1).
pub fn contracted_class_enum() -> Vec<ContractedClass> {
    let mut out = Vec::new();
    for d in (4 - NODE_SLOTS as i64)..=4 {
        let target_sq = d * d + d + 1;
        let target_sum = 4 * d - 1;
        let bound = isqrt(target_sq);
        let mut seq = Vec::with_capacity(EXCEPTIONAL_SLOTS);
        let mut found = Vec::new();
        descend(&mut seq, bound, -bound, target_sum, target_sq, &mut found);
        for m in found {
            let genus = d * d - 3 * d - m.iter().map(|x| x * x - x).sum::<i64>();
            debug_assert_eq!(genus, -2, "genus constraint follows from the other two");
            out.push(annotate(d, m));
        }
    }
    out
}

fn isqrt(n: i64) -> i64 {
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Extend a non-increasing sequence by entries ≤ `max`, pruning on the
/// remaining sum of squares.
fn descend(seq: &mut Vec<i64>, max: i64, min: i64, sum: i64, sq: i64, found: &mut Vec<Vec<i64>>) {
    let used_sum: i64 = seq.iter().sum();
    let used_sq: i64 = seq.iter().map(|x| x * x).sum();
    if used_sq > sq {
        return;
    }
    let slots = EXCEPTIONAL_SLOTS - seq.len();
    if slots == 0 {
        if used_sum == sum && used_sq == sq {
            found.push(seq.clone());
        }
        return;
    }
    // Cauchy–Schwarz on the remaining slots
    let (rest_sum, rest_sq) = (sum - used_sum, sq - used_sq);
    if rest_sum * rest_sum > slots as i64 * rest_sq {
        return;
    }
    for v in (min..=max).rev() {
        seq.push(v);
        descend(seq, v, min, sum, sq, found);
        seq.pop();
    }
}

fn annotate(d: i64, mut m: Vec<i64>) -> ContractedClass {
    m.retain(|&x| x != 0);
    let sum_n = 4 - d;
    let case = match d {
        0 => 'a',
        1 => 'b',
        2 => 'c',
        _ => 'd',
    };
    let annotation = (d == 3).then(|| {
        "excluded as a line class (the ideal of the surface contains no cubics); \
         the contracted cubic-degree classes are the conics 3l−2E₁−E₂−…−E₉−F₁−…−F₅ of case (d)"
            .to_string()
    });
    ContractedClass { d, class: format_class(d, &m, sum_n), multiplicities: m, sum_n, case, annotation }
}

fn format_class(d: i64, m: &[i64], sum_n: i64) -> String {
    let mut s = match d {
        0 => String::new(),
        1 => "l".to_string(),
        _ => format!("{d}l"),
    };
    for (i, &mi) in m.iter().enumerate() {
        let e = format!("E{}", i + 1);
        s += &match mi {
            1 => format!("−{e}"),
            -1 if s.is_empty() => e,
            -1 => format!("+{e}"),
            k if k > 0 => format!("−{k}{e}"),
            k => format!("+{}{e}", -k),
        };
    }
    for j in 1..=sum_n {
        s += &format!("−F{j}");
    }
    s
}

/// (a·D + b·E)³ from the four cubic monomials (D³, D²E, DE², E³).
pub fn intersection_numbers(table: [i64; 4], combo: (i64, i64)) -> i64 {
    let (a, b) = combo;
    let [ddd, dde, dee, eee] = table;
    a * a * a * ddd + 3 * a * a * b * dde + 3 * a * b * b * dee + b * b * b * eee
}

/// Cubic form on ⟨H, S⟩ of the blown-up threefold.
pub const HS_TABLE: [i64; 4] = [16, 1, -3, -1];
/// Cubic form on ⟨H₁, S₁⟩ of the quintic side.
pub const H1S1_TABLE: [i64; 4] = [5, 6, -2, -47];

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerBudget {
    /// e(resolution) − #nodes of the quintic.
    pub lhs: i64,
    /// −200 + Σ μ over the nodes of the quintic.
    pub rhs: i64,
    pub holds: bool,
}

/// −108 − N = −200 + Σμ for a quintic whose N singular points have Milnor
/// numbers summing to Σμ.
pub fn euler_budget(node_count: usize, milnor_sum: usize) -> EulerBudget {
    let lhs = CONSTANTS.euler - node_count as i64;
    let rhs = -200 + milnor_sum as i64;
    EulerBudget { lhs, rhs, holds: lhs == rhs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    /// Oracle: count how many slots take each value in [−b, b] instead of
    /// walking sequences.
    fn naive(d: i64) -> BTreeSet<Vec<i64>> {
        let sq = d * d + d + 1;
        let b = isqrt(sq);
        let values: Vec<i64> = (-b..=b).collect();
        let mut out = BTreeSet::new();
        let mut counts = vec![0usize; values.len()];
        fn rec(i: usize, left: usize, values: &[i64], counts: &mut [usize], sq: i64, sum: i64, out: &mut BTreeSet<Vec<i64>>) {
            if i == values.len() {
                if left == 0 {
                    let m: Vec<i64> = values.iter().zip(counts.iter()).flat_map(|(v, c)| std::iter::repeat(*v).take(*c)).collect();
                    if m.iter().map(|x| x * x).sum::<i64>() == sq && m.iter().sum::<i64>() == sum {
                        let mut nz: Vec<i64> = m.into_iter().filter(|&x| x != 0).collect();
                        nz.sort_unstable_by(|a, b| b.cmp(a));
                        out.insert(nz);
                    }
                }
                return;
            }
            for c in 0..=left {
                counts[i] = c;
                rec(i + 1, left - c, values, counts, sq, sum, out);
            }
            counts[i] = 0;
        }
        rec(0, EXCEPTIONAL_SLOTS, &values, &mut counts, sq, 4 * d - 1, &mut out);
        out
    }

    #[test]
    fn exactly_four_classes() {
        let classes = contracted_class_enum();
        let got: Vec<(i64, Vec<i64>, i64)> = classes.iter().map(|c| (c.d, c.multiplicities.clone(), c.sum_n)).collect();
        assert_eq!(
            got,
            vec![(0, vec![-1], 4), (1, vec![1, 1, 1], 3), (2, vec![1; 7], 2), (3, [vec![2], vec![1; 9]].concat(), 1)]
        );
        assert_eq!(classes.iter().map(|c| c.case).collect::<String>(), "abcd");
        assert!(classes[3].annotation.is_some() && classes[..3].iter().all(|c| c.annotation.is_none()));
        assert_eq!(classes[0].class, "E1−F1−F2−F3−F4");
        assert_eq!(classes[1].class, "l−E1−E2−E3−F1−F2−F3");
    }

    #[test]
    fn enumeration_matches_naive_oracle() {
        let fast = contracted_class_enum();
        for d in -6..=4 {
            let expected = naive(d);
            let got: BTreeSet<Vec<i64>> = fast.iter().filter(|c| c.d == d).map(|c| c.multiplicities.clone()).collect();
            assert_eq!(got, expected, "d = {d}");
        }
        assert!(naive(4).is_empty());
    }

    #[test]
    fn enumeration_is_deterministic() {
        assert_eq!(contracted_class_enum(), contracted_class_enum());
    }

    #[test]
    fn intersection_numbers_from_tables() {
        assert_eq!(intersection_numbers(HS_TABLE, (1, -1)), 5);
        assert_eq!(intersection_numbers(HS_TABLE, (1, 0)), 16);
        assert_eq!(intersection_numbers(H1S1_TABLE, (3, -1)), 2);
        assert_eq!(intersection_numbers(H1S1_TABLE, (1, 0)), 5);
    }

    #[test]
    fn euler_identity_for_46_nodes() {
        let b = euler_budget(46, 46);
        assert_eq!((b.lhs, b.rhs, b.holds), (-154, -154, true));
        assert!(!euler_budget(45, 45).holds);
    }

    proptest::proptest! {
        #[test]
        fn trinomial_expansion_matches_bilinear_model(a in -20i64..20, b in -20i64..20, t in proptest::array::uniform4(-50i64..50)) {
            // cube of a linear form evaluated through the symmetric trilinear form
            let coeff = |i: usize, j: usize, k: usize| t[[i, j, k].iter().filter(|&&x| x == 1).count()];
            let v = [a, b];
            let mut total = 0;
            for i in 0..2 { for j in 0..2 { for k in 0..2 { total += v[i] * v[j] * v[k] * coeff(i, j, k); } } }
            proptest::prop_assert_eq!(intersection_numbers(t, (a, b)), total);
        }
    }
}
