//! Rational homotopy ranks.

use super::group::FGAbGroup;
use super::table::{Space, TableError};

/// Rank of g ⊗ Q.
pub fn rationalize(g: &FGAbGroup) -> usize {
    g.rank()
}

/// rank π_k(S^n) ⊗ Q: concentrated in degree n for n odd and in degrees
/// n, 2n − 1 for n even.
pub fn rational_pi_sphere(n: u32, k: u32) -> usize {
    assert!(n >= 2, "spheres of dimension at least 2");
    let hit = if n % 2 == 1 { k == n } else { k == n || k == 2 * n - 1 };
    usize::from(hit)
}

/// Citation attached to every rational degree list.
pub const LIE_GROUP_CITATION: &str =
    "Serre, Groupes d'homotopie et classes de groupes abéliens (compact Lie groups are rationally products of odd spheres); degrees of the primitive generators";

/// Sphere dimensions of the rational splitting of a simply connected
/// compact Lie group.
pub fn lie_group_rational_degrees(name: &str) -> Result<Vec<u32>, TableError> {
    let missing = || TableError::MissingEntry { space: Space::LieGroup(name.to_string()), degree: 0 };
    let (family, arg) = match name.split_once('(') {
        Some((f, rest)) => (f.trim(), rest.trim_end_matches(')').trim()),
        None => (name.trim(), ""),
    };
    if family == "G2" || family == "G_2" {
        return Ok(vec![3, 11]);
    }
    let n: u32 = arg.parse().map_err(|_| missing())?;
    match family {
        "SU" if (2..=6).contains(&n) => Ok((1..n).map(|i| 2 * i + 1).collect()),
        "Sp" if (1..=3).contains(&n) => Ok((1..=n).map(|i| 4 * i - 1).collect()),
        "Spin" => match n {
            3 => Ok(vec![3]),
            4 => Ok(vec![3, 3]),
            5 => Ok(vec![3, 7]),
            6 => Ok(vec![3, 5, 7]),
            7 => Ok(vec![3, 7, 11]),
            8 => Ok(vec![3, 7, 7, 11]),
            _ => Err(missing()),
        },
        _ => Err(missing()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_ranks() {
        assert_eq!(rational_pi_sphere(3, 6), 0);
        assert_eq!(rational_pi_sphere(2, 3), 1);
        assert_eq!(rational_pi_sphere(4, 4), 1);
        assert_eq!(rational_pi_sphere(4, 7), 1);
        assert_eq!(rational_pi_sphere(5, 9), 0);
    }

    #[test]
    fn lie_groups() {
        assert_eq!(lie_group_rational_degrees("SU(3)").unwrap(), vec![3, 5]);
        assert_eq!(lie_group_rational_degrees("SU(2)").unwrap(), vec![3]);
        assert_eq!(lie_group_rational_degrees("G2").unwrap(), vec![3, 11]);
        assert!(lie_group_rational_degrees("SU(9)").is_err());
        assert!(lie_group_rational_degrees("E8").is_err());
    }
}
