use std::fmt;

use super::LabelingError;

/// A label, indexing into an [`Alphabet`]. Index order is the canonical
/// letter order used by normal forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sym(pub u8);

impl Sym {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Maximum alphabet size; sets of labels are 64-bit masks.
pub const MAX_SYMBOLS: usize = 64;

/// A set of labels.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymSet(u64);

impl SymSet {
    pub const EMPTY: SymSet = SymSet(0);

    pub fn single(s: Sym) -> Self {
        SymSet(1 << s.0)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, s: Sym) -> bool {
        self.0 & (1 << s.0) != 0
    }

    pub fn insert(&mut self, s: Sym) {
        self.0 |= 1 << s.0;
    }

    pub fn remove(&mut self, s: Sym) {
        self.0 &= !(1 << s.0);
    }

    pub fn with(mut self, s: Sym) -> Self {
        self.insert(s);
        self
    }

    pub fn union(self, other: SymSet) -> SymSet {
        SymSet(self.0 | other.0)
    }

    pub fn intersection(self, other: SymSet) -> SymSet {
        SymSet(self.0 & other.0)
    }

    pub fn difference(self, other: SymSet) -> SymSet {
        SymSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: SymSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Members in canonical order.
    pub fn iter(self) -> impl Iterator<Item = Sym> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros();
            bits &= bits - 1;
            Some(Sym(i as u8))
        })
    }
}

impl FromIterator<Sym> for SymSet {
    fn from_iter<I: IntoIterator<Item = Sym>>(iter: I) -> Self {
        let mut set = SymSet::EMPTY;
        for s in iter {
            set.insert(s);
        }
        set
    }
}

impl fmt::Debug for SymSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|s| s.0)).finish()
    }
}

/// Label set with its inversion and commutation relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    inv: Vec<Sym>,
    commute: Vec<SymSet>,
}

impl Alphabet {
    /// Checks that `inv` is a fixed-point-free involution and that the
    /// commutation relation is symmetric, irreflexive, never relates a letter
    /// to its inverse and is compatible with inversion.
    pub fn new(
        names: Vec<String>,
        inv: Vec<Sym>,
        commute: Vec<SymSet>,
    ) -> Result<Self, LabelingError> {
        let n = names.len();
        if n > MAX_SYMBOLS {
            return Err(LabelingError::TooManySymbols(n));
        }
        assert_eq!(inv.len(), n);
        assert_eq!(commute.len(), n);
        let bad = |s: usize, reason: &str| LabelingError::InvalidAlphabet {
            symbol: names[s].clone(),
            reason: reason.to_string(),
        };
        for s in 0..n {
            let i = inv[s].index();
            if i >= n || inv[i].index() != s {
                return Err(bad(s, "inversion is not an involution"));
            }
            if i == s {
                return Err(bad(s, "inversion has a fixed point"));
            }
            let row = commute[s];
            if row.contains(Sym(s as u8)) || row.contains(inv[s]) {
                return Err(bad(s, "commutes with itself or its inverse"));
            }
            for t in row.iter() {
                if t.index() >= n || !commute[t.index()].contains(Sym(s as u8)) {
                    return Err(bad(s, "commutation is not symmetric"));
                }
                if !commute[i].contains(t) {
                    return Err(bad(s, "commutation is not compatible with inversion"));
                }
            }
        }
        Ok(Alphabet {
            names,
            inv,
            commute,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Sym> {
        (0..self.names.len()).map(|i| Sym(i as u8))
    }

    pub fn all(&self) -> SymSet {
        self.symbols().collect()
    }

    pub fn name(&self, s: Sym) -> &str {
        &self.names[s.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn sym(&self, name: &str) -> Option<Sym> {
        self.names.iter().position(|n| n == name).map(|i| Sym(i as u8))
    }

    pub fn inv(&self, s: Sym) -> Sym {
        self.inv[s.index()]
    }

    pub fn commutes(&self, s: Sym, t: Sym) -> bool {
        self.commute[s.index()].contains(t)
    }

    /// Labels commuting with `s`.
    pub fn commuting(&self, s: Sym) -> SymSet {
        self.commute[s.index()]
    }

    /// Commutation lookup by symbol name.
    pub fn commutes_by_name(&self, s: &str, t: &str) -> Result<bool, LabelingError> {
        let lookup = |n: &str| {
            self.sym(n)
                .ok_or_else(|| LabelingError::UnknownSymbol(n.to_string()))
        };
        Ok(self.commutes(lookup(s)?, lookup(t)?))
    }

    /// Re-indexes the alphabet so that `order` becomes the canonical order.
    /// Returns the new alphabet and the map old index -> new symbol.
    pub fn reordered(&self, order: &[String]) -> Result<(Alphabet, Vec<Sym>), LabelingError> {
        let mut seen = vec![false; self.len()];
        let mut new_of_old = vec![Sym(0); self.len()];
        if order.len() != self.len() {
            return Err(LabelingError::BadOrder(format!(
                "expected {} symbols, got {}",
                self.len(),
                order.len()
            )));
        }
        for (new, name) in order.iter().enumerate() {
            let old = self
                .sym(name)
                .ok_or_else(|| LabelingError::UnknownSymbol(name.clone()))?;
            if seen[old.index()] {
                return Err(LabelingError::BadOrder(format!("`{name}` listed twice")));
            }
            seen[old.index()] = true;
            new_of_old[old.index()] = Sym(new as u8);
        }
        let map = |s: Sym| new_of_old[s.index()];
        let mut names = vec![String::new(); self.len()];
        let mut inv = vec![Sym(0); self.len()];
        let mut commute = vec![SymSet::EMPTY; self.len()];
        for s in self.symbols() {
            names[map(s).index()] = self.name(s).to_string();
            inv[map(s).index()] = map(self.inv(s));
            commute[map(s).index()] = self.commuting(s).iter().map(map).collect();
        }
        Ok((Alphabet::new(names, inv, commute)?, new_of_old))
    }

    /// The commutation graph in DOT.
    pub fn commutation_dot(&self) -> String {
        let mut out = String::from("graph commutation {\n");
        for s in self.symbols() {
            out.push_str(&format!("  \"{}\";\n", self.name(s)));
        }
        for s in self.symbols() {
            for t in self.commuting(s).iter().filter(|&t| t > s) {
                out.push_str(&format!("  \"{}\" -- \"{}\";\n", self.name(s), self.name(t)));
            }
        }
        out.push_str("}\n");
        out
    }
}
