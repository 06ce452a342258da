use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::base::BaseCategory;
use crate::abelian::{FinAbGroup, GroupElt, GroupHom, Subgroup};
use crate::error::{MextError, Result};
use crate::qforms::{isometry_search, MetricGroup, QuadForm, QZ};

/// A pointed minimal extension `Rep(A, t) ↪ C`: a metric group `C` with an
/// embedding `ι: Â → C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinExt {
    base: BaseCategory,
    cat: MetricGroup,
    iota: GroupHom,
}

#[derive(Serialize, Deserialize)]
struct IotaJson {
    matrix: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct MinExtJson {
    base: BaseCategory,
    cat: MetricGroup,
    iota: IotaJson,
}

impl Serialize for MinExt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MinExtJson {
            base: self.base.clone(),
            cat: self.cat.clone(),
            iota: IotaJson {
                matrix: self.iota.matrix().to_vec(),
            },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MinExt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<MinExt, D::Error> {
        let raw = MinExtJson::deserialize(d)?;
        let iota = GroupHom::new(
            raw.base.dual().clone(),
            raw.cat.group().clone(),
            raw.iota.matrix,
        )
        .map_err(serde::de::Error::custom)?;
        MinExt::new(raw.base, raw.cat, iota).map_err(serde::de::Error::custom)
    }
}

impl MinExt {
    /// Validates all defining conditions.
    pub fn new(base: BaseCategory, cat: MetricGroup, iota: GroupHom) -> Result<Self> {
        let m = MinExt { base, cat, iota };
        m.validate()?;
        Ok(m)
    }

    pub fn base(&self) -> &BaseCategory {
        &self.base
    }

    pub fn cat(&self) -> &MetricGroup {
        &self.cat
    }

    pub fn iota(&self) -> &GroupHom {
        &self.iota
    }

    pub fn group(&self) -> &FinAbGroup {
        self.cat.group()
    }

    /// `ι(Â)`.
    pub fn image(&self) -> Subgroup {
        self.iota.image()
    }

    /// `|C| = |A|²`, `ι` injective, `q_C ∘ ι = q_t`, `ι(Â)^⊥ = ι(Â)`.
    pub fn validate(&self) -> Result<()> {
        let a = self.base.group();
        if self.iota.source() != a || self.iota.target() != self.group() {
            return Err(MextError::Invariant("ι must map Â into C".into()));
        }
        if self.group().order() != a.order() * a.order() {
            return Err(MextError::Invariant(format!(
                "|C| = {} but |A|² = {}",
                self.group().order(),
                a.order() * a.order()
            )));
        }
        if !self.iota.is_injective() {
            return Err(MextError::Invariant("ι is not injective".into()));
        }
        if self.cat.form().pullback(&self.iota)? != self.base.q_t() {
            return Err(MextError::Invariant("q_C(ι(φ)) ≠ ⟨t, φ⟩".into()));
        }
        let img = self.image();
        if self.cat.orthogonal_complement(&img) != img {
            return Err(MextError::Invariant("ι(Â) is not its own centralizer".into()));
        }
        Ok(())
    }

    /// `C = A × Â` with `h(a, φ) = ⟨a, φ⟩ + ⟨t, φ⟩ + q(a)` and `ι(φ) = (0, φ)`.
    pub fn build_trivial(base: &BaseCategory, q: &QuadForm) -> Result<Self> {
        let a = base.group();
        if q.group() != a {
            return Err(MextError::GroupMismatch("q must be a form on A".into()));
        }
        let r = a.rank();
        let c = a.direct_sum(a);
        let mut diag: Vec<QZ> = q.diag().to_vec();
        diag.extend(base.q_t().diag().iter().copied());
        let mut cross = vec![];
        for i in 0..2 * r {
            for j in i + 1..2 * r {
                cross.push(if j < r {
                    q.b_gen(i, j)
                } else if i < r && j - r == i {
                    QZ::new(1, a.moduli()[i])
                } else {
                    QZ::ZERO
                });
            }
        }
        let cat = MetricGroup::new(QuadForm::new(c.clone(), diag, cross)?)?;
        let images: Vec<GroupElt> = (0..r).map(|i| a.pair(&a.zero(), &a.basis(i))).collect();
        let iota = GroupHom::from_images(a.clone(), c, &images)?;
        MinExt::new(base.clone(), cat, iota)
    }

    /// The unit `M₀ = build_trivial(0)`.
    pub fn unit(base: &BaseCategory) -> Self {
        MinExt::build_trivial(base, &QuadForm::zero(base.group())).expect("unit extension")
    }

    /// Same group and embedding, negated form.
    pub fn reverse(&self) -> MinExt {
        MinExt {
            base: self.base.clone(),
            cat: self.cat.reverse(),
            iota: self.iota.clone(),
        }
    }

    /// `M₁ ⊡ M₂`: condensation of `C₁ ⊕ C₂` along `{(ι₁φ, −ι₂φ)}`.
    pub fn product(&self, other: &MinExt) -> Result<MinExt> {
        if self.base != other.base {
            return Err(MextError::BaseMismatch);
        }
        let (g1, g2) = (self.group(), other.group());
        let sum = self.cat.direct_sum(&other.cat);
        let s = sum.group();
        let a = self.base.group();
        let gens: Vec<GroupElt> = (0..a.rank())
            .map(|i| {
                let x = self.iota.image_of_generator(i);
                let y = g2.neg(&other.iota.image_of_generator(i));
                g1.pair(&x, &y)
            })
            .collect();
        let h = Subgroup::generated(s, &gens);
        let cond = sum.condense(&h)?;
        let images: Vec<GroupElt> = (0..a.rank())
            .map(|i| cond.project(&g1.pair(&self.iota.image_of_generator(i), &g2.zero())))
            .collect::<Result<_>>()?;
        let iota = GroupHom::from_images(a.clone(), cond.metric.group().clone(), &images)?;
        MinExt::new(self.base.clone(), cond.metric, iota)
    }

    /// The product with the opposite sign convention `{(ι₁φ, ι₂φ)}`.
    pub fn product_opposite_sign(&self, other: &MinExt) -> Result<MinExt> {
        if self.base != other.base {
            return Err(MextError::BaseMismatch);
        }
        let (g1, g2) = (self.group(), other.group());
        let sum = self.cat.direct_sum(&other.cat);
        let a = self.base.group();
        let gens: Vec<GroupElt> = (0..a.rank())
            .map(|i| g1.pair(&self.iota.image_of_generator(i), &other.iota.image_of_generator(i)))
            .collect();
        let cond = sum.condense(&Subgroup::generated(sum.group(), &gens))?;
        let images: Vec<GroupElt> = (0..a.rank())
            .map(|i| cond.project(&g1.pair(&self.iota.image_of_generator(i), &g2.zero())))
            .collect::<Result<_>>()?;
        let iota = GroupHom::from_images(a.clone(), cond.metric.group().clone(), &images)?;
        MinExt::new(self.base.clone(), cond.metric, iota)
    }

    /// `M^{⊡n}` for `n ≥ 1`.
    pub fn power(&self, n: u64) -> Result<MinExt> {
        if n == 0 {
            return Ok(MinExt::unit(&self.base));
        }
        let mut p = self.clone();
        for _ in 1..n {
            p = p.product(self)?;
        }
        Ok(p)
    }

    /// The `x ∈ A` with `b_C(c, ι(φ)) = ⟨x, φ⟩` for all `φ`.
    pub fn grading_degree(&self, c: &GroupElt) -> Result<GroupElt> {
        self.group().check(c)?;
        let a = self.base.group();
        let coords: Vec<i64> = (0..a.rank())
            .map(|j| {
                self.cat
                    .b(c, &self.iota.image_of_generator(j))
                    .numerator_over(a.moduli()[j])
                    .expect("b(c, ι(e_j)) is killed by n_j")
            })
            .collect();
        Ok(a.reduce(&coords))
    }

    /// The grading as a homomorphism `C → A`.
    pub fn grading(&self) -> Result<GroupHom> {
        let c = self.group();
        let imgs: Vec<GroupElt> = (0..c.rank())
            .map(|i| self.grading_degree(&c.basis(i)))
            .collect::<Result<_>>()?;
        GroupHom::from_images(c.clone(), self.base.group().clone(), &imgs)
    }

    /// Checks faithfulness of the grading and that the trivial component is `ι(Â)`.
    pub fn check_grading(&self) -> Result<()> {
        let g = self.grading()?;
        if g.image().order() != self.base.group().order() {
            return Err(MextError::Invariant("grading is not faithful".into()));
        }
        if g.kernel() != self.image() {
            return Err(MextError::Invariant("trivial component differs from ι(Â)".into()));
        }
        Ok(())
    }

    /// An isometry `f: C₁ → C₂` with `f ∘ ι₁ = ι₂`, if one exists.
    pub fn equivalent(&self, other: &MinExt) -> Result<Option<GroupHom>> {
        if self.base != other.base {
            return Err(MextError::BaseMismatch);
        }
        let pins: Vec<(GroupElt, GroupElt)> = (0..self.base.group().rank())
            .map(|i| (self.iota.image_of_generator(i), other.iota.image_of_generator(i)))
            .collect();
        isometry_search(self.cat.form(), other.cat.form(), &pins)
    }

    pub fn is_equivalent(&self, other: &MinExt) -> Result<bool> {
        Ok(self.equivalent(other)?.is_some())
    }

    /// Least `n ≤ cap` with `M^{⊡n} ≅ M₀`.
    pub fn order_in_mext(&self, cap: u64) -> Result<u64> {
        if cap == 0 {
            return Err(MextError::Range("cap must be at least 1".into()));
        }
        let unit = MinExt::unit(&self.base);
        let mut p = self.clone();
        for n in 1..=cap {
            if p.is_equivalent(&unit)? {
                return Ok(n);
            }
            if n < cap {
                p = p.product(self)?;
            }
        }
        Err(MextError::CapExceeded(cap))
    }

    /// Central charge of `C` in sixteenths, computed twice: directly, and
    /// after condensing the Tannakian part `ι({φ : ⟨t, φ⟩ = 0})`.
    pub fn charge_and_w(&self) -> Result<(u8, u8)> {
        let k16 = (2 * self.cat.central_charge()?) % 16;
        let tann = self.base.tannakian_part();
        let gens: Vec<GroupElt> = tann.gens().iter().map(|g| self.iota.apply(g)).collect();
        let h = Subgroup::generated(self.group(), &gens);
        let cond = self.cat.condense(&h)?;
        let expect = if self.base.is_tannakian() { 1 } else { 4 };
        if cond.metric.order() != expect {
            return Err(MextError::Internal(format!(
                "condensed Tannakian part has order {}, expected {expect}",
                cond.metric.order()
            )));
        }
        let cross = (2 * cond.metric.central_charge()?) % 16;
        if cross != k16 {
            return Err(MextError::Internal(format!(
                "charge routes disagree: {k16}/16 vs {cross}/16"
            )));
        }
        Ok((k16, cross))
    }

    /// `k` with central charge `k/16`.
    pub fn charge16(&self) -> Result<u8> {
        Ok(self.charge_and_w()?.0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> QZ {
        s.parse().unwrap()
    }

    #[test]
    fn unit_is_valid() {
        for b in [BaseCategory::svect(), BaseCategory::z2_z2f(), BaseCategory::cyclic_fermionic(2).unwrap()] {
            let m = MinExt::unit(&b);
            m.validate().unwrap();
            m.check_grading().unwrap();
            assert_eq!(m.charge16().unwrap(), 0);
            assert_eq!(m.order_in_mext(4).unwrap(), 1);
        }
    }

    #[test]
    fn trivial_over_svect_quarter() {
        let b = BaseCategory::svect();
        let qf = QuadForm::diagonal(b.group(), vec![q("1/4")]).unwrap();
        let m = MinExt::build_trivial(&b, &qf).unwrap();
        let mut vals: Vec<QZ> = m.group().elements().map(|x| m.cat().q(&x)).collect();
        vals.sort();
        assert_eq!(vals, vec![q("0"), q("1/4"), q("1/4"), q("1/2")]);
        assert_eq!(m.cat().central_charge().unwrap(), 2);
        assert_eq!(m.charge16().unwrap(), 4);
    }

    #[test]
    fn unit_grading_is_first_projection() {
        let b = BaseCategory::z2_z2f();
        let m = MinExt::unit(&b);
        let a = b.group();
        for x in m.group().elements() {
            let (ap, _) = FinAbGroup::split_at(&x, a.rank());
            assert_eq!(m.grading_degree(&x).unwrap(), ap);
        }
    }

    #[test]
    fn reverse_involutive_and_unit_self_reverse() {
        let b = BaseCategory::svect();
        let m = MinExt::unit(&b);
        assert_eq!(m.reverse().reverse(), m);
        assert!(m.reverse().is_equivalent(&m).unwrap());
    }

    #[test]
    fn json_roundtrip() {
        let b = BaseCategory::svect();
        let m = MinExt::unit(&b);
        let s = m.to_json();
        assert!(s.contains(r#""iota":{"matrix":[[0],[1]]}"#), "{s}");
        assert_eq!(serde_json::from_str::<MinExt>(&s).unwrap(), m);
        // break minimality: ι(1) = (1,1) has q = 1/4 + 1/2 = 3/4 ≠ 1/2
        let bad = s.replace(r#""matrix":[[0],[1]]"#, r#""matrix":[[1],[1]]"#);
        assert!(serde_json::from_str::<MinExt>(&bad).is_err());
    }

    #[test]
    fn base_mismatch() {
        let m1 = MinExt::unit(&BaseCategory::svect());
        let m2 = MinExt::unit(&BaseCategory::cyclic_fermionic(2).unwrap());
        assert!(matches!(m1.product(&m2), Err(MextError::BaseMismatch)));
    }
}
