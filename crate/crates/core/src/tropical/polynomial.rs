use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{LatticePolygon, LatticeVector};
use crate::rational::{serde_rational, Point, Rational};

/// A max-plus polynomial `max_I { a_I + I·x }` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalPolynomial {
    terms: BTreeMap<LatticeVector, Rational>,
}

impl TropicalPolynomial {
    /// Builds a polynomial; a repeated exponent keeps the larger coefficient,
    /// as tropical addition would.
    pub fn new(terms: impl IntoIterator<Item = (LatticeVector, Rational)>) -> Result<Self> {
        let mut map: BTreeMap<LatticeVector, Rational> = BTreeMap::new();
        for (i, a) in terms {
            match map.get(&i) {
                Some(old) if *old >= a => {}
                _ => {
                    map.insert(i, a);
                }
            }
        }
        if map.is_empty() {
            return Err(Error::Invalid("polynomial has no terms".into()));
        }
        Ok(TropicalPolynomial { terms: map })
    }

    pub fn terms(&self) -> &BTreeMap<LatticeVector, Rational> {
        &self.terms
    }

    pub fn support(&self) -> Vec<LatticeVector> {
        self.terms.keys().copied().collect()
    }

    pub fn coefficient(&self, i: LatticeVector) -> Option<&Rational> {
        self.terms.get(&i)
    }

    /// `max_I { a_I + I·x }`.
    pub fn eval(&self, x: &Point) -> Rational {
        self.terms.iter().map(|(&i, a)| a + x.dot(i)).max().expect("nonempty")
    }

    /// Exponents whose terms attain the maximum at `x`.
    pub fn maximizers(&self, x: &Point) -> Vec<LatticeVector> {
        let m = self.eval(x);
        self.terms.iter().filter(|(&i, a)| *a + x.dot(i) == m).map(|(&i, _)| i).collect()
    }

    /// Convex hull of the support; `SegmentSupport` when it is not two-dimensional.
    pub fn newton_polygon(&self) -> Result<LatticePolygon> {
        LatticePolygon::hull(&self.support()).map_err(|_| Error::SegmentSupport)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    i: [i64; 2],
    #[serde(with = "serde_rational")]
    a: Rational,
}

#[derive(Serialize, Deserialize)]
struct PolynomialJson {
    terms: Vec<TermJson>,
}

impl Serialize for TropicalPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolynomialJson { terms: self.terms.iter().map(|(i, a)| TermJson { i: [i.x, i.y], a: a.clone() }).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TropicalPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = PolynomialJson::deserialize(d)?;
        TropicalPolynomial::new(json.terms.into_iter().map(|t| (LatticeVector::new(t.i[0], t.i[1]), t.a)))
            .map_err(serde::de::Error::custom)
    }
}
