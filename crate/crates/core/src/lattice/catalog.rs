use super::{product, Lattice};
use crate::error::{Error, Result};

/// Built-in lattices by name.
///
/// * `ONE`: one element `0`
/// * `B2`: the chain `0 < 1`
/// * `Cn`: the `n`-element chain `0 < t1 < … < t(n-2) < 1`
/// * `Mk`: height two with atoms `a, b, c, …` (so `M2` is the square, `M3` the diamond)
/// * `N5`: the pentagon `0 < a < c < 1`, `0 < b < 1`
/// * `X×Y` or `XxY`: direct product of two catalog lattices, with `(x,y)` labels
pub fn catalog(name: &str) -> Result<Lattice> {
    let unknown = || Error::UnknownName(name.to_string());
    let trimmed = name.trim();
    if let Some((l, r)) = trimmed.split_once(['x', '×', '*']) {
        let left = catalog(l)?;
        let right = catalog(r)?;
        return Ok(product(&left, &right).lattice);
    }
    match trimmed {
        "ONE" => Lattice::new(&["0"], &[]),
        "B2" => chain(2),
        "N5" => Lattice::new(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")],
        ),
        _ => {
            let mut chars = trimmed.chars();
            let kind = chars.next().ok_or_else(unknown)?;
            let n: usize = chars.as_str().parse().map_err(|_| unknown())?;
            match kind {
                'C' if n >= 1 => chain(n),
                'M' if (1..=26).contains(&n) => height_two(n),
                _ => Err(unknown()),
            }
        }
    }
}

fn chain(n: usize) -> Result<Lattice> {
    let names: Vec<String> = (0..n)
        .map(|i| match i {
            0 => "0".to_string(),
            i if i == n - 1 => "1".to_string(),
            i => format!("t{i}"),
        })
        .collect();
    let pairs: Vec<(String, String)> = names.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
    Lattice::new(&names, &pairs)
}

fn height_two(k: usize) -> Result<Lattice> {
    let mut names = vec!["0".to_string()];
    names.extend((0..k).map(|i| ((b'a' + i as u8) as char).to_string()));
    names.push("1".to_string());
    let mut pairs = Vec::new();
    for atom in &names[1..=k] {
        pairs.push(("0".to_string(), atom.clone()));
        pairs.push((atom.clone(), "1".to_string()));
    }
    Lattice::new(&names, &pairs)
}
