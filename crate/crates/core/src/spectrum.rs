//! Energy-level lists with degeneracy grouping.

use serde::Serialize;

/// Tolerance for deciding that two closed-form energies coincide
/// (energies are sums of O(λ) doubles).
pub const DEGENERACY_TOL: f64 = 1e-9;

/// One energy level of a diagonal Hamiltonian in the number basis.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumLevel {
    /// Number-operator eigenvalue.
    pub n: usize,
    /// Block index k = n / λ.
    pub k: usize,
    /// Grade μ = n mod λ.
    pub mu: usize,
    pub energy: f64,
    /// Index into the degeneracy classes, ascending in energy.
    pub class_id: usize,
}

/// A maximal set of levels sharing one energy.
#[derive(Debug, Clone, Serialize)]
pub struct EnergyClass {
    pub id: usize,
    pub energy: f64,
    pub degeneracy: usize,
}

/// Levels and their complete degeneracy classes.
#[derive(Debug, Clone, Serialize)]
pub struct Spectrum {
    pub levels: Vec<SpectrumLevel>,
    pub classes: Vec<EnergyClass>,
}

impl Spectrum {
    pub fn ground_energy(&self) -> f64 {
        self.classes.first().map(|c| c.energy).unwrap_or(f64::NAN)
    }

    pub fn ground_degeneracy(&self) -> usize {
        self.classes.first().map(|c| c.degeneracy).unwrap_or(0)
    }

    /// Energies sorted ascending, one entry per level.
    pub fn sorted_energies(&self) -> Vec<f64> {
        let mut e: Vec<f64> = self.levels.iter().map(|l| l.energy).collect();
        e.sort_by(|a, b| a.partial_cmp(b).unwrap());
        e
    }
}

/// Group closed-form energies into degeneracy classes.
///
/// `entries` must cover n = 0..window+margin where `margin` exceeds the
/// largest possible |n − n'| between two degenerate levels; only levels
/// below `window` are returned, and only classes entirely below `window`
/// are counted, so every reported degeneracy is truncation-independent.
pub fn group_spectrum(lambda: usize, entries: &[f64], window: usize) -> Spectrum {
    let mut order: Vec<usize> = (0..entries.len()).collect();
    order.sort_by(|&i, &j| entries[i].partial_cmp(&entries[j]).unwrap());

    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &n in &order {
        match groups.last_mut() {
            Some(g) if (entries[n] - entries[*g.last().unwrap()]).abs() <= DEGENERACY_TOL => {
                g.push(n)
            }
            _ => groups.push(vec![n]),
        }
    }

    let mut levels: Vec<SpectrumLevel> = Vec::new();
    let mut classes: Vec<EnergyClass> = Vec::new();
    for group in groups {
        if group.iter().any(|&n| n >= window) {
            continue;
        }
        let id = classes.len();
        let energy = entries[group[0]];
        classes.push(EnergyClass {
            id,
            energy,
            degeneracy: group.len(),
        });
        for &n in &group {
            levels.push(SpectrumLevel {
                n,
                k: n / lambda,
                mu: n % lambda,
                energy: entries[n],
                class_id: id,
            });
        }
    }
    levels.sort_by_key(|l| l.n);
    Spectrum { levels, classes }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups_equal_energies() {
        // energies 0, 3, 3, 3, 6, 6, 6, 9... with window 6 and margin 3
        let entries: Vec<f64> = vec![0.0, 3.0, 3.0, 3.0, 6.0, 6.0, 6.0, 9.0, 9.0];
        let s = group_spectrum(3, &entries, 6);
        assert_eq!(s.classes.len(), 2);
        assert_eq!(s.classes[0].degeneracy, 1);
        assert_eq!(s.classes[1].degeneracy, 3);
        assert_eq!(s.ground_energy(), 0.0);
        // the partial class at 6 (member n = 6 >= window) is dropped
        assert!(s.levels.iter().all(|l| l.n < 6));
        assert_eq!(s.levels.len(), 4);
    }

    #[test]
    fn nondegenerate_ladder() {
        let entries: Vec<f64> = (0..10).map(|n| n as f64 + 0.5).collect();
        let s = group_spectrum(2, &entries, 8);
        assert_eq!(s.classes.len(), 8);
        assert!(s.classes.iter().all(|c| c.degeneracy == 1));
    }
}
