//! Built-in instances with expected graded dimensions.

use std::collections::BTreeMap;

use num_traits::One;

use crate::basealg::{ChernData, GradedBaseAlgebra};
use crate::charpair::CharacteristicPair;
use crate::error::{Error, Result};
use crate::exactnum::{int, Scalar};
use crate::srbundle::BundleRing;

#[derive(Clone, Debug)]
pub struct Instance {
    /// Canonical spec string, e.g. `hirzebruch?a=2`.
    pub name: String,
    pub cp: CharacteristicPair,
    pub base: GradedBaseAlgebra,
    pub chern: ChernData,
    pub expected_betti: Vec<usize>,
    /// Support numbers of an honest convex polytope with this normal fan.
    pub convex_h: Option<Vec<Scalar>>,
}

impl Instance {
    pub fn ring(&self) -> Result<BundleRing> {
        BundleRing::new(self.cp.clone(), self.base.clone(), self.chern.clone())
    }

    pub fn is_toric(&self) -> bool {
        self.cp
            .rays()
            .iter()
            .zip(self.cp.lambda())
            .all(|(r, l)| r.iter().zip(l).all(|(a, b)| *a == int(*b)))
    }

    pub fn point_base(&self) -> bool {
        self.base.dim() == 1
    }
}

pub struct Entry {
    pub name: &'static str,
    pub params: &'static [(&'static str, i64)],
    pub description: &'static str,
}

pub const ENTRIES: &[Entry] = &[
    Entry { name: "cp1", params: &[], description: "projective line over a point" },
    Entry { name: "cp2", params: &[], description: "projective plane over a point" },
    Entry { name: "cp3", params: &[], description: "projective 3-space over a point" },
    Entry {
        name: "cp2bar",
        params: &[],
        description: "projective plane fan with a non-toric characteristic map (mixed signs)",
    },
    Entry {
        name: "hirzebruch-toric",
        params: &[("a", 1)],
        description: "toric Hirzebruch surface as a 4-ray fan over a point",
    },
    Entry { name: "cp1xcp1", params: &[], description: "product of two projective lines over a point" },
    Entry {
        name: "hirzebruch",
        params: &[("a", 1)],
        description: "projective-line fiber over the projective line, c(e1) = a t",
    },
    Entry {
        name: "cp1-over-cp2",
        params: &[("a", 1)],
        description: "projective-line fiber over the projective plane, c(e1) = a t",
    },
    Entry {
        name: "cp2-over-cp1",
        params: &[("a", 1), ("b", 2)],
        description: "projective-plane fiber over the projective line, c(e1) = a t, c(e2) = b t",
    },
    Entry {
        name: "cp1-over-cp1xcp1",
        params: &[],
        description: "projective-line fiber over a product of lines, c(e1) = t|1 + 1|t",
    },
    Entry {
        name: "cp1-over-t2",
        params: &[("a", 1)],
        description: "projective-line fiber over a 2-torus (odd base classes), c(e1) = a ab",
    },
    Entry {
        name: "cp2bar-over-cp1",
        params: &[],
        description: "non-toric plane fiber over the projective line, c(e1) = t",
    },
];

fn ints(xs: &[i64]) -> Vec<Scalar> {
    xs.iter().map(|&x| int(x)).collect()
}

fn cp1_pair() -> CharacteristicPair {
    CharacteristicPair::toric(vec![vec![1], vec![-1]], vec![vec![0], vec![1]]).expect("cp1")
}

fn cp2_pair() -> CharacteristicPair {
    CharacteristicPair::toric(
        vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
        vec![vec![0, 1], vec![1, 2], vec![0, 2]],
    )
    .expect("cp2")
}

fn cp3_pair() -> CharacteristicPair {
    CharacteristicPair::toric(
        vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![-1, -1, -1]],
        vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
    )
    .expect("cp3")
}

fn cp2bar_pair() -> CharacteristicPair {
    CharacteristicPair::new(
        2,
        vec![ints(&[1, 0]), ints(&[0, 1]), ints(&[-1, -1])],
        vec![vec![1, 0], vec![0, 1], vec![1, 1]],
        vec![vec![0, 1], vec![1, 2], vec![0, 2]],
    )
    .expect("cp2bar")
}

fn square_fan(third: Vec<i64>) -> CharacteristicPair {
    CharacteristicPair::toric(
        vec![vec![1, 0], vec![0, 1], third, vec![0, -1]],
        vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
    )
    .expect("square fan")
}

fn torus2() -> GradedBaseAlgebra {
    let one = Scalar::one();
    let mut p = BTreeMap::new();
    for i in 0..4 {
        p.insert((0, i), vec![(i, one.clone())]);
        p.insert((i, 0), vec![(i, one.clone())]);
    }
    p.insert((1, 2), vec![(3, one.clone())]);
    p.insert((2, 1), vec![(3, -one)]);
    GradedBaseAlgebra::from_sparse(
        vec!["1".into(), "a".into(), "b".into(), "ab".into()],
        vec![0, 1, 1, 2],
        &p,
        ints(&[0, 0, 0, 1]),
    )
    .expect("torus")
}

fn point_instance(name: String, cp: CharacteristicPair, betti: &[usize], convex: Option<&[i64]>) -> Instance {
    let base = GradedBaseAlgebra::make_point();
    let chern = ChernData::zero(&base, cp.n());
    Instance {
        name,
        cp,
        base,
        chern,
        expected_betti: betti.to_vec(),
        convex_h: convex.map(ints),
    }
}

fn parse_params(query: &str) -> Result<BTreeMap<String, i64>> {
    let mut out = BTreeMap::new();
    for part in query.split(['&', ',']).filter(|s| !s.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("bad catalog parameter {part:?}")))?;
        let v: i64 = v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("parameter {k} must be an integer")))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

/// Resolves `name` or `name?a=1&b=2`.
pub fn lookup(spec: &str) -> Result<Instance> {
    let (name, query) = spec.split_once('?').unwrap_or((spec, ""));
    let entry = ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::MalformedInput(format!("unknown catalog instance {name:?}")))?;
    let given = parse_params(query)?;
    for k in given.keys() {
        if !entry.params.iter().any(|(p, _)| p == k) {
            return Err(Error::MalformedInput(format!("{name} has no parameter {k:?}")));
        }
    }
    let param = |p: &str| -> i64 {
        given
            .get(p)
            .copied()
            .unwrap_or_else(|| entry.params.iter().find(|(q, _)| *q == p).map(|(_, d)| *d).unwrap_or(0))
    };
    let canonical = if entry.params.is_empty() {
        name.to_string()
    } else {
        let ps: Vec<String> = entry.params.iter().map(|(p, _)| format!("{p}={}", param(p))).collect();
        format!("{name}?{}", ps.join("&"))
    };
    let inst = match name {
        "cp1" => point_instance(canonical, cp1_pair(), &[1, 0, 1], Some(&[1, 1])),
        "cp2" => point_instance(canonical, cp2_pair(), &[1, 0, 1, 0, 1], Some(&[1, 1, 1])),
        "cp3" => point_instance(canonical, cp3_pair(), &[1, 0, 1, 0, 1, 0, 1], Some(&[1, 1, 1, 1])),
        "cp2bar" => point_instance(canonical, cp2bar_pair(), &[1, 0, 1, 0, 1], None),
        "hirzebruch-toric" => {
            let a = param("a");
            let convex = [a + 2, 1, 1, 1];
            point_instance(
                canonical,
                square_fan(vec![-1, a]),
                &[1, 0, 2, 0, 1],
                (a >= 0).then_some(&convex[..]),
            )
        }
        "cp1xcp1" => point_instance(canonical, square_fan(vec![-1, 0]), &[1, 0, 2, 0, 1], Some(&[1, 1, 1, 1])),
        "hirzebruch" => fibered(canonical, cp1_pair(), GradedBaseAlgebra::make_cp(1), vec![vec![int(param("a"))]], &[1, 0, 2, 0, 1], Some(&[1, 1]))?,
        "cp1-over-cp2" => fibered(
            canonical,
            cp1_pair(),
            GradedBaseAlgebra::make_cp(2),
            vec![vec![int(param("a"))]],
            &[1, 0, 2, 0, 2, 0, 1],
            Some(&[1, 1]),
        )?,
        "cp2-over-cp1" => fibered(
            canonical,
            cp2_pair(),
            GradedBaseAlgebra::make_cp(1),
            vec![vec![int(param("a"))], vec![int(param("b"))]],
            &[1, 0, 2, 0, 2, 0, 1],
            Some(&[1, 1, 1]),
        )?,
        "cp1-over-cp1xcp1" => {
            let c1 = GradedBaseAlgebra::make_cp(1);
            fibered(
                canonical,
                cp1_pair(),
                GradedBaseAlgebra::tensor(&c1, &c1),
                vec![vec![int(1), int(1)]],
                &[1, 0, 3, 0, 3, 0, 1],
                Some(&[1, 1]),
            )?
        }
        "cp1-over-t2" => {
            let base = torus2();
            let ab = base.index_of("ab").expect("ab");
            let mut img = base.zero();
            img[ab] = int(param("a"));
            let chern = ChernData::new(&base, vec![img])?;
            Instance {
                name: canonical,
                cp: cp1_pair(),
                base,
                chern,
                expected_betti: vec![1, 2, 2, 2, 1],
                convex_h: Some(ints(&[1, 1])),
            }
        }
        "cp2bar-over-cp1" => fibered(
            canonical,
            cp2bar_pair(),
            GradedBaseAlgebra::make_cp(1),
            vec![vec![int(1)], vec![int(0)]],
            &[1, 0, 2, 0, 2, 0, 1],
            None,
        )?,
        _ => unreachable!("entry table and constructors agree"),
    };
    Ok(inst)
}

fn fibered(
    name: String,
    cp: CharacteristicPair,
    base: GradedBaseAlgebra,
    chern_deg2: Vec<Vec<Scalar>>,
    betti: &[usize],
    convex: Option<&[i64]>,
) -> Result<Instance> {
    let chern = ChernData::from_degree2(&base, chern_deg2)?;
    Ok(Instance {
        name,
        cp,
        base,
        chern,
        expected_betti: betti.to_vec(),
        convex_h: convex.map(ints),
    })
}

/// Every entry at its default parameters.
pub fn all() -> Vec<Instance> {
    ENTRIES.iter().map(|e| lookup(e.name).expect("catalog entries build")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_validates() {
        for inst in all() {
            let r = inst.cp.validate();
            assert!(r.ok(), "{}: {r:?}", inst.name);
            assert!(inst.base.validate().ok(), "{}", inst.name);
            assert_eq!(
                inst.expected_betti.len() as u32,
                inst.base.top_degree() + 2 * inst.cp.n() as u32 + 1,
                "{}",
                inst.name
            );
        }
    }

    #[test]
    fn parameters() {
        let h = lookup("hirzebruch?a=3").unwrap();
        assert_eq!(h.name, "hirzebruch?a=3");
        assert_eq!(h.chern.images()[0][1], int(3));
        assert_eq!(lookup("hirzebruch").unwrap().name, "hirzebruch?a=1");
        assert_eq!(lookup("cp2-over-cp1?b=5,a=0").unwrap().name, "cp2-over-cp1?a=0&b=5");
        assert!(lookup("nope").is_err());
        assert!(lookup("cp2?a=1").is_err());
        assert!(lookup("hirzebruch?a=x").is_err());
    }

    #[test]
    fn signs_of_cp2bar() {
        let cp = cp2bar_pair();
        let signs: Vec<i8> = cp.max_cones().iter().map(|c| cp.cone_sign(c).unwrap().value).collect();
        assert_eq!(signs, vec![1, -1, -1]);
    }
}
