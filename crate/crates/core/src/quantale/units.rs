//! Units of `B ⊗̌ B` and of `Gal(B, B)`, and the isomorphism with the
//! quantale of all relations on the atoms.

use rand::Rng;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::order::FinitePoset;
use crate::par;
use crate::relation::Relation;
use crate::tensor::{galois_map, MapTable, TensorBase, TensorFamily};

use super::compose::galois_compose;
use super::relational::{odot, TensorQuantale};

fn square_lattice(base: &TensorBase) -> Result<&FinitePoset> {
    let ap = base
        .left()
        .augmented()
        .ok_or_else(|| Error::CarrierMismatch("unit checks need poset sides".into()))?;
    if !base.left().same_carrier(base.right()) {
        return Err(Error::CarrierMismatch("unit checks need a square base".into()));
    }
    ap.poset().require_complete(base.left().name())?;
    Ok(ap.poset())
}

/// Truncated indices of the atoms of the full carrier.
fn truncated_atoms(base: &TensorBase, p: &FinitePoset) -> Vec<usize> {
    p.atoms().into_iter().filter_map(|a| base.left().new_index(a)).collect()
}

/// `I_A = {(a, a) : a an atom}` in truncated form.
pub fn atom_identity(base: &TensorBase) -> Result<Relation> {
    let p = square_lattice(base)?;
    Ok(Relation::from_pairs(
        base.rows(),
        base.cols(),
        truncated_atoms(base, p).into_iter().map(|a| (a, a)),
    ))
}

/// `i_A`: the bottom goes to the top, atoms to themselves, everything else to
/// the bottom.
pub fn atom_identity_map(p: &FinitePoset) -> Result<MapTable> {
    p.require_complete("B")?;
    let (bot, top) = (p.bottom().expect("complete"), p.top().expect("complete"));
    let atoms = Bits::from_indices(p.len(), p.atoms());
    Ok((0..p.len())
        .map(|x| {
            if x == bot {
                top
            } else if atoms.contains(x) {
                x
            } else {
                bot
            }
        })
        .collect())
}

pub fn is_antitone(a: &FinitePoset, b: &FinitePoset, f: &[usize]) -> bool {
    (0..a.len()).all(|x| a.up_of(x).iter().all(|y| b.leq(f[y], f[x])))
}

/// Units of `B ⊗̌ B` seen from both sides of the correspondence with maps.
#[derive(Clone, Debug)]
pub struct UnitReport {
    pub atomistic: bool,
    /// `I_A` in truncated form.
    pub identity: Relation,
    pub identity_is_tensor: bool,
    /// `I_A ⊙ T = T = T ⊙ I_A` for every tensor, computed with `odot`.
    pub identity_neutral: bool,
    /// Indices of all units of the `⊙` table, by exhaustive search.
    pub units: Vec<usize>,
    pub map: MapTable,
    pub map_antitone: bool,
    /// `i_A` equals the map of `I_A`.
    pub map_matches_identity: bool,
    /// `i_A ⊙ g = g = g ⊙ i_A` for every Galois map, through [`galois_compose`].
    pub map_neutral: bool,
    /// All units of `Gal(B, B)` under [`galois_compose`].
    pub map_units: Vec<MapTable>,
}

impl UnitReport {
    pub fn unital(&self) -> bool {
        !self.units.is_empty()
    }

    /// Atomistic, `I_A` neutral, unital, `i_A` neutral and `Gal(B, B)` unital
    /// all have the same truth value.
    pub fn agree(&self) -> bool {
        let v = [
            self.atomistic,
            self.identity_neutral,
            self.unital(),
            self.map_neutral,
            !self.map_units.is_empty(),
        ];
        v.iter().all(|&x| x == v[0])
    }
}

/// Decides unitality of `B ⊗̌ B` with `⊙`, and of `Gal(B, B)`.
pub fn unit_report(tq: &TensorQuantale) -> Result<UnitReport> {
    let base = tq.base();
    let p = square_lattice(base)?;
    let fam = tq.family();
    let identity = atom_identity(base)?;
    let identity_is_tensor = base.is_tensor(&identity);
    let identity_neutral = identity_is_tensor
        && fam.members().iter().all(|t| {
            odot(base, base, &identity, t).expect("square") == *t && odot(base, base, t, &identity).expect("square") == *t
        });
    let units = tq.to_finite().units();

    let map = atom_identity_map(p)?;
    let map_antitone = is_antitone(p, p, &map);
    let maps: Vec<MapTable> = fam.members().iter().map(|t| galois_map(base, t)).collect::<Result<_>>()?;
    let map_matches_identity = identity_is_tensor && galois_map(base, &identity)? == map;
    let neutral = |e: &MapTable| {
        maps.iter().all(|g| {
            galois_compose(p, p, p, e, g).expect("antitone") == *g && galois_compose(p, p, p, g, e).expect("antitone") == *g
        })
    };
    let map_neutral = map_antitone && neutral(&map);
    let flags = par::map(&maps, |e| neutral(e));
    let map_units = maps.iter().zip(flags).filter(|(_, ok)| *ok).map(|(m, _)| m.clone()).collect();
    Ok(UnitReport {
        atomistic: p.properties().atomistic,
        identity,
        identity_is_tensor,
        identity_neutral,
        units,
        map,
        map_antitone,
        map_matches_identity,
        map_neutral,
        map_units,
    })
}

/// `T ↦ {(i, j) : (atom_i, atom_j) ∈ T}` from the tensors of `B ⊗̌ B` to the
/// relations on the atoms of `B`, with its candidate inverse
/// `ρ ↦ t̄(↓{(atom_i, atom_j) : (i, j) ∈ ρ})`.
#[derive(Clone, Debug)]
pub struct AtomRelationIso {
    base: TensorBase,
    atoms: Vec<usize>,
}

/// What was checked for the atom isomorphism, with the first failure of each
/// kind.
#[derive(Clone, Debug, Default)]
pub struct AtomIsoReport {
    pub atoms: usize,
    pub tensors: usize,
    pub bijective: bool,
    pub order_failure: Option<(usize, usize)>,
    /// Checked products `φ(R ⊙ S) = φ(R) · φ(S)` over the whole table.
    pub table_products: usize,
    pub table_failure: Option<(usize, usize)>,
    /// Checked triples `φ((R ⊙ S) ⊙ T) = φ(R) · φ(S) · φ(T)`.
    pub triples: usize,
    pub triple_failure: Option<(usize, usize, usize)>,
    /// Checked products of pure tensors `↓(x, y)`.
    pub pure_products: usize,
    pub pure_failure: Option<((usize, usize), (usize, usize))>,
}

impl AtomIsoReport {
    pub fn holds(&self) -> bool {
        self.bijective
            && self.order_failure.is_none()
            && self.table_failure.is_none()
            && self.triple_failure.is_none()
            && self.pure_failure.is_none()
    }
}

impl AtomRelationIso {
    pub fn new(base: &TensorBase) -> Result<Self> {
        let p = square_lattice(base)?;
        let atoms = truncated_atoms(base, p);
        if atoms.len() * atoms.len() > 16 {
            return Err(Error::BoundExceeded {
                got: atoms.len(),
                max: 4,
            });
        }
        Ok(AtomRelationIso {
            base: base.clone(),
            atoms,
        })
    }

    pub fn atoms(&self) -> &[usize] {
        &self.atoms
    }

    pub fn phi(&self, t: &Relation) -> Relation {
        let k = self.atoms.len();
        Relation::from_pairs(
            k,
            k,
            (0..k)
                .flat_map(|i| (0..k).map(move |j| (i, j)))
                .filter(|&(i, j)| t.contains(self.atoms[i], self.atoms[j])),
        )
    }

    pub fn psi(&self, rho: &Relation) -> Relation {
        let pairs = rho.pairs().map(|(i, j)| (self.atoms[i], self.atoms[j]));
        let r = Relation::from_pairs(self.base.rows(), self.base.cols(), pairs);
        self.base.t_bar(&self.base.down_closure(&r))
    }

    fn compose(&self, r: &Relation, s: &Relation) -> Relation {
        r.product(s).expect("same atom set")
    }

    /// Checks bijectivity, order, the whole `⊙` table, `samples` random
    /// triples, and every product of two pure tensors.
    pub fn check<R: Rng + ?Sized>(&self, tq: &TensorQuantale, samples: usize, rng: &mut R) -> AtomIsoReport {
        let fam: &TensorFamily = tq.family();
        let n = fam.len();
        let k = self.atoms.len();
        let images: Vec<Relation> = fam.members().iter().map(|t| self.phi(t)).collect();
        let mut sorted = images.clone();
        sorted.sort();
        sorted.dedup();
        let bijective = n == 1 << (k * k)
            && sorted.len() == n
            && fam.members().iter().zip(&images).all(|(t, img)| self.psi(img) == *t);
        let order_failure = (0..n * n)
            .map(|c| (c / n, c % n))
            .find(|&(i, j)| fam.get(i).is_subset(fam.get(j)) != images[i].is_subset(&images[j]));
        let table_failure = par::find_first(n * n, |c| {
            let (i, j) = (c / n, c % n);
            (images[tq.mul(i, j)] != self.compose(&images[i], &images[j])).then_some((i, j))
        });
        let base = &self.base;
        let mul = |r: &Relation, s: &Relation| odot(base, base, r, s).expect("square");
        let mut triple_failure = None;
        for _ in 0..samples {
            let (i, j, l) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            let lhs = self.phi(&mul(&mul(fam.get(i), fam.get(j)), fam.get(l)));
            let rhs = self.compose(&self.compose(&images[i], &images[j]), &images[l]);
            if lhs != rhs && triple_failure.is_none() {
                triple_failure = Some((i, j, l));
            }
        }
        let m = base.rows();
        let pures: Vec<(usize, usize)> = (0..m * m).map(|c| (c / m, c % m)).collect();
        let pure_failure = par::find_first(pures.len() * pures.len(), |c| {
            let (x, y) = (pures[c / pures.len()], pures[c % pures.len()]);
            let (px, py) = (base.pure(x.0, x.1), base.pure(y.0, y.1));
            (self.phi(&mul(&px, &py)) != self.compose(&self.phi(&px), &self.phi(&py))).then_some((x, y))
        });
        AtomIsoReport {
            atoms: k,
            tensors: n,
            bijective,
            order_failure,
            table_products: n * n,
            table_failure,
            triples: samples,
            triple_failure,
            pure_products: pures.len() * pures.len(),
            pure_failure,
        }
    }
}

/// Whether the atoms of the tensor lattice are exactly the pure tensors
/// `↓(a, b)` of atoms `a`, `b` of the two factors.
pub fn atoms_are_pure_tensors(family: &TensorFamily) -> bool {
    let base = family.base();
    let atoms_of = |side: &crate::tensor::Side| -> Option<Vec<usize>> {
        let p = side.augmented()?.poset();
        Some(p.atoms().into_iter().filter_map(|a| side.new_index(a)).collect())
    };
    let (Some(xa), Some(ya)) = (atoms_of(base.left()), atoms_of(base.right())) else { return false };
    let mut expected: Vec<Relation> = xa.iter().flat_map(|&a| ya.iter().map(move |&b| base.pure(a, b))).collect();
    expected.sort();
    let lattice = family.lattice();
    let mut found: Vec<Relation> = lattice.atoms().into_iter().map(|i| family.get(i).clone()).collect();
    found.sort();
    found == expected
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::DEFAULT_GUARD;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tq(p: &FinitePoset) -> TensorQuantale {
        TensorQuantale::new(TensorBase::lattice_square("B", p), DEFAULT_GUARD).unwrap()
    }

    #[test]
    fn b4_unit_is_the_atom_diagonal() {
        let q = tq(&FinitePoset::powerset(&["p", "q"]));
        let r = unit_report(&q).unwrap();
        assert_eq!(q.len(), 16);
        assert!(r.agree() && r.unital() && r.identity_neutral);
        assert_eq!(r.units, vec![q.family().index_of(&r.identity).unwrap()]);
        assert_eq!(r.identity, Relation::from_pairs(3, 3, [(0, 0), (1, 1)]));
        assert_eq!(r.map, vec![3, 1, 2, 0]);
        assert!(r.map_matches_identity && r.map_antitone);
        assert_eq!(r.map_units, vec![r.map.clone()]);
    }

    #[test]
    fn chain3_has_no_unit() {
        let r = unit_report(&tq(&FinitePoset::chain(3))).unwrap();
        assert!(r.agree());
        assert!(!r.unital() && !r.identity_neutral);
    }

    #[test]
    fn m3_is_atomistic_so_the_diagonal_is_a_unit() {
        let q = tq(&FinitePoset::m3());
        let r = unit_report(&q).unwrap();
        assert!(r.agree() && r.unital());
        assert_eq!(r.units, vec![q.family().index_of(&r.identity).unwrap()]);
        assert!(!q.to_finite().check().is_prequantale());
    }

    #[test]
    fn b4_atom_isomorphism() {
        let q = tq(&FinitePoset::powerset(&["p", "q"]));
        let iso = AtomRelationIso::new(q.base()).unwrap();
        let rep = iso.check(&q, 200, &mut ChaCha8Rng::seed_from_u64(1));
        assert!(rep.holds(), "{rep:?}");
        assert_eq!(rep.table_products, 256);
    }

    #[test]
    fn chain3_isomorphism_fails() {
        let q = tq(&FinitePoset::chain(3));
        let iso = AtomRelationIso::new(q.base()).unwrap();
        let rep = iso.check(&q, 10, &mut ChaCha8Rng::seed_from_u64(1));
        assert!(!rep.bijective);
    }

    #[test]
    fn atoms_of_tensor_lattices() {
        for p in [FinitePoset::chain(3), FinitePoset::powerset(&["p", "q"]), FinitePoset::n5()] {
            assert!(atoms_are_pure_tensors(tq(&p).family()));
        }
    }
}
