//! Named end-to-end checks, grouped into suites. Every check is deterministic.

use serde::Serialize;

use crate::abelian::FinAbGroup;
use crate::error::{MextError, Result};
use crate::extensions::{
    build_m_k_zeta, cayley_table, enumerate_pointed, group_from_table, identify, m1_i, m2_xi,
    BaseCategory, MinExt,
};
use crate::filtration::{kunneth_check, mext_factors, twofun_recursion, Factors};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Svect,
    Z2n,
    Z2z2,
    Kunneth,
    All,
}

impl std::str::FromStr for Suite {
    type Err = MextError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "svect" => Ok(Suite::Svect),
            "z2n" => Ok(Suite::Z2n),
            "z2z2" => Ok(Suite::Z2z2),
            "kunneth" => Ok(Suite::Kunneth),
            "all" => Ok(Suite::All),
            _ => Err(MextError::Parse(format!(
                "unknown suite {s:?} (svect, z2n, z2z2, kunneth, all)"
            ))),
        }
    }
}

struct Recorder {
    suite: &'static str,
    out: Vec<Check>,
}

impl Recorder {
    fn new(suite: &'static str) -> Self {
        Recorder { suite, out: vec![] }
    }

    /// Records `f`; an error from `f` counts as a failure with its message.
    fn check(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<(bool, String)>) {
        let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
        self.out.push(Check {
            suite: self.suite,
            name: name.into(),
            passed,
            detail,
        });
    }
}

fn factor_order(base: &BaseCategory) -> Result<u64> {
    Ok(mext_factors(base)?.order())
}

fn pointed_group(base: &BaseCategory, reps: &[MinExt]) -> Result<FinAbGroup> {
    let table = cayley_table(reps)?;
    let id = identify(&MinExt::unit(base), reps)?;
    group_from_table(&table, id)
}

fn svect(r: &mut Recorder) {
    let base = BaseCategory::svect();
    r.check("factor order is 16", || {
        let n = factor_order(&base)?;
        Ok((n == 16, format!("order {n}")))
    });
    let reps = match enumerate_pointed(&base) {
        Ok(reps) => reps,
        Err(e) => {
            r.check("enumerate pointed classes", || Err(e));
            return;
        }
    };
    r.check("8 pointed classes", || Ok((reps.len() == 8, format!("{} classes", reps.len()))));
    r.check("classes form Z8", || {
        let g = pointed_group(&base, &reps)?;
        Ok((g.moduli() == [8], format!("Z{:?}", g.moduli())))
    });
    r.check("charges are the even residues mod 16", || {
        let mut k: Vec<u8> = reps.iter().map(|m| m.charge16()).collect::<Result<_>>()?;
        k.sort();
        let distinct = k.windows(2).all(|w| w[0] != w[1]);
        Ok((k == [0, 2, 4, 6, 8, 10, 12, 14] && distinct, format!("{k:?}")))
    });
}

fn z2n(r: &mut Recorder) {
    for n in 2..=3u32 {
        let Ok(base) = BaseCategory::cyclic_fermionic(n) else {
            continue;
        };
        let expected = 1u64 << (n + 1);
        r.check(format!("n = {n}: factor order {expected}"), || {
            let o = factor_order(&base)?;
            Ok((o == expected, format!("order {o}")))
        });
        r.check(format!("n = {n}: M_0 generates order {expected}"), || {
            let o = build_m_k_zeta(n, 0, 1)?.order_in_mext(64)?;
            Ok((o == expected, format!("order {o}")))
        });
        for k in 0..n {
            r.check(format!("n = {n}: M_{k}² ≅ M_{}", k + 1), || {
                let m = build_m_k_zeta(n, k, 1)?;
                let ok = m.product(&m)?.is_equivalent(&build_m_k_zeta(n, k + 1, 1)?)?;
                Ok((ok, String::new()))
            });
        }
    }
}

fn z2z2(r: &mut Recorder) {
    let base = BaseCategory::z2_z2f();
    r.check("factors [Z4×Z2, Z2², 0, Z2²], order 128", || {
        let f = mext_factors(&base)?;
        let Factors::SuperTannakian(f) = f else {
            return Ok((false, "reported as Tannakian".into()));
        };
        let ok = f.triv.moduli() == [2, 4]
            && f.pt_over_triv.moduli() == [2, 2]
            && f.int_over_pt.is_trivial()
            && f.top.moduli() == [2, 2]
            && f.total_order == 128;
        Ok((ok, serde_json::to_string(&f).unwrap_or_default()))
    });
    match enumerate_pointed(&base) {
        Ok(reps) => {
            r.check("32 pointed classes", || Ok((reps.len() == 32, format!("{} classes", reps.len()))));
            r.check("pointed classes form Z8 × Z4", || {
                let g = pointed_group(&base, &reps)?;
                Ok((g.moduli() == [4, 8], format!("Z{:?}", g.moduli())))
            });
        }
        Err(e) => r.check("enumerate pointed classes", || Err(e)),
    }
    r.check("M2(ξ) has order 4", || {
        let o = m2_xi(1)?.order_in_mext(64)?;
        Ok((o == 4, format!("order {o}")))
    });
    r.check("M1(i) ≅ M2(ξ)²", || {
        let m = m2_xi(1)?;
        Ok((m.product(&m)?.is_equivalent(&m1_i(1)?)?, String::new()))
    });
    r.check("M2(ξ) ≅ M2(ξ') iff ξ' = ±ξ", || {
        for a in [1, 3, 5, 7] {
            for b in [1, 3, 5, 7] {
                let eq = m2_xi(a)?.is_equivalent(&m2_xi(b)?)?;
                if eq != ((a - b) % 4 == 0) {
                    return Ok((false, format!("ξ^{a} vs ξ^{b}")));
                }
            }
        }
        Ok((true, String::new()))
    });
}

fn kunneth(r: &mut Recorder) {
    let pairs: [(&[i64], &[i64]); 4] = [(&[2], &[2]), (&[2], &[4]), (&[4], &[4]), (&[2, 2], &[2])];
    for (g, l) in pairs {
        r.check(format!("H³ Künneth for Z{g:?} × Z{l:?}"), || {
            let led = kunneth_check(&FinAbGroup::new(g.to_vec())?, &FinAbGroup::new(l.to_vec())?);
            Ok((led.balanced, format!("{} = {}", led.lhs, led.rhs)))
        });
    }
    r.check("Rep(Z2) ⊠ sVect: 128 = 16·2·2·2", || {
        let led = twofun_recursion(&BaseCategory::z2_z2f(), 0)?;
        let ok = led.balanced && (led.lhs, led.mext_e1, led.n, led.ext, led.hom_pic) == (128, 16, 2, 2, 2);
        Ok((ok, format!("{} = {}·{}·{}·{}", led.lhs, led.mext_e1, led.n, led.ext, led.hom_pic)))
    });
}

pub fn run(suite: Suite) -> Vec<Check> {
    let mut out = vec![];
    let mut go = |name: &'static str, f: fn(&mut Recorder)| {
        let mut r = Recorder::new(name);
        f(&mut r);
        out.extend(r.out);
    };
    match suite {
        Suite::Svect => go("svect", svect),
        Suite::Z2n => go("z2n", z2n),
        Suite::Z2z2 => go("z2z2", z2z2),
        Suite::Kunneth => go("kunneth", kunneth),
        Suite::All => {
            go("svect", svect);
            go("z2n", z2n);
            go("z2z2", z2z2);
            go("kunneth", kunneth);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kunneth_suite_passes() {
        let checks = run(Suite::Kunneth);
        assert_eq!(checks.len(), 5);
        assert!(checks.iter().all(|c| c.passed), "{checks:?}");
    }

    #[test]
    fn suite_names() {
        assert_eq!("z2z2".parse::<Suite>().unwrap(), Suite::Z2z2);
        assert!("nope".parse::<Suite>().is_err());
    }
}
