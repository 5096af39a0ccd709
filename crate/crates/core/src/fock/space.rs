//! Mode labels and the truncated occupation-number basis.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Momentum sector of a field mode (`k` or `-k`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sector {
    Plus,
    Minus,
}

impl Sector {
    pub fn conjugate(self) -> Sector {
        match self {
            Sector::Plus => Sector::Minus,
            Sector::Minus => Sector::Plus,
        }
    }
}

/// Physical role of a mode in the horizon channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModeKind {
    /// Outgoing quanta just outside the horizon (region I).
    Exterior,
    /// Partner quanta just inside the horizon (region II).
    Interior,
    /// Late-time incoming mode that scatters at the horizon.
    Signal,
}

/// One bosonic mode, e.g. `Exterior/Plus` for the outside `k`-momentum mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mode {
    pub kind: ModeKind,
    pub sector: Sector,
}

impl Mode {
    pub const fn new(kind: ModeKind, sector: Sector) -> Self {
        Mode { kind, sector }
    }

    /// Weight of this mode in the conserved charge
    /// `N_exterior + N_signal - N_interior`: every coupling in the channel
    /// creates or moves quanta in charge-neutral combinations.
    pub fn charge_weight(self) -> i64 {
        match self.kind {
            ModeKind::Exterior | ModeKind::Signal => 1,
            ModeKind::Interior => -1,
        }
    }
}

/// Truncated occupation basis over an ordered set of modes, each cut off at
/// occupation `n_max`. Basis index `i` maps bijectively to the occupation
/// tuple via mixed-radix (row-major) decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FockSpace {
    modes: Vec<Mode>,
    n_max: usize,
    strides: Vec<usize>,
    dim: usize,
}

impl FockSpace {
    pub fn new(modes: Vec<Mode>, n_max: usize) -> Result<Self> {
        if modes.is_empty() || modes.len() > 6 {
            return Err(Error::domain("a Fock space needs between 1 and 6 modes"));
        }
        for (i, m) in modes.iter().enumerate() {
            if modes[i + 1..].contains(m) {
                return Err(Error::domain(format!("duplicate mode {m:?}")));
            }
        }
        if n_max == 0 {
            return Err(Error::domain("n_max must be at least 1"));
        }
        let radix = n_max + 1;
        let mut dim = 1usize;
        for _ in &modes {
            dim = dim
                .checked_mul(radix)
                .filter(|&d| d <= 200_000_000)
                .ok_or_else(|| {
                    Error::domain(format!(
                        "basis dimension exceeds 2e8 for {} modes at n_max = {n_max}",
                        modes.len()
                    ))
                })?;
        }
        let mut strides = vec![1usize; modes.len()];
        for i in (0..modes.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * radix;
        }
        Ok(FockSpace {
            modes,
            n_max,
            strides,
            dim,
        })
    }

    /// Two-mode space of one early-time squeezing pair:
    /// `(Exterior s, Interior -s)`.
    pub fn pair(sector: Sector, n_max: usize) -> Result<Self> {
        FockSpace::new(
            vec![
                Mode::new(ModeKind::Exterior, sector),
                Mode::new(ModeKind::Interior, sector.conjugate()),
            ],
            n_max,
        )
    }

    /// Three-mode space of one late-time sector:
    /// `(Exterior s, Interior -s, Signal s)`.
    pub fn triple(sector: Sector, n_max: usize) -> Result<Self> {
        FockSpace::new(
            vec![
                Mode::new(ModeKind::Exterior, sector),
                Mode::new(ModeKind::Interior, sector.conjugate()),
                Mode::new(ModeKind::Signal, sector),
            ],
            n_max,
        )
    }

    /// Concatenation `self (x) other`; basis index `i * other.dim + j`.
    pub fn join(&self, other: &FockSpace) -> Result<Self> {
        if self.n_max != other.n_max {
            return Err(Error::domain("joined spaces must share n_max"));
        }
        let mut modes = self.modes.clone();
        modes.extend_from_slice(&other.modes);
        FockSpace::new(modes, self.n_max)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn modes(&self) -> &[Mode] {
        &self.modes
    }

    pub fn mode_position(&self, mode: Mode) -> Option<usize> {
        self.modes.iter().position(|m| *m == mode)
    }

    /// Position of the unique mode of the given kind, if present.
    pub fn kind_position(&self, kind: ModeKind) -> Option<usize> {
        self.modes.iter().position(|m| m.kind == kind)
    }

    pub fn stride(&self, position: usize) -> usize {
        self.strides[position]
    }

    pub fn index_of(&self, occ: &[usize]) -> Result<usize> {
        if occ.len() != self.modes.len() {
            return Err(Error::domain(format!(
                "occupation tuple has {} entries for {} modes",
                occ.len(),
                self.modes.len()
            )));
        }
        let mut idx = 0;
        for (o, s) in occ.iter().zip(&self.strides) {
            if *o > self.n_max {
                return Err(Error::domain(format!(
                    "occupation {o} exceeds n_max = {}",
                    self.n_max
                )));
            }
            idx += o * s;
        }
        Ok(idx)
    }

    pub fn occupation_of(&self, index: usize) -> Vec<usize> {
        let mut occ = vec![0; self.modes.len()];
        self.write_occupation(index, &mut occ);
        occ
    }

    pub fn write_occupation(&self, index: usize, occ: &mut [usize]) {
        debug_assert!(index < self.dim);
        let mut rest = index;
        for (slot, s) in occ.iter_mut().zip(&self.strides) {
            *slot = rest / s;
            rest %= s;
        }
    }

    /// Occupation of a single mode position, without decomposing the rest.
    pub fn occupation_at(&self, index: usize, position: usize) -> usize {
        (index / self.strides[position]) % (self.n_max + 1)
    }

    /// Conserved-charge value of a basis state.
    pub fn charge_of(&self, index: usize) -> i64 {
        let mut charge = 0i64;
        for (pos, mode) in self.modes.iter().enumerate() {
            charge += mode.charge_weight() * self.occupation_at(index, pos) as i64;
        }
        charge
    }

    /// Basis indices grouped by conserved charge, each group ascending.
    pub fn indices_by_charge(&self) -> BTreeMap<i64, Vec<usize>> {
        let mut map: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for i in 0..self.dim {
            map.entry(self.charge_of(i)).or_default().push(i);
        }
        map
    }
}
