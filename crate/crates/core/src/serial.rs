//! Serde helpers: big integers are emitted as exact decimal JSON numbers,
//! rationals as `"p/q"` strings, surds as small objects.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::arith::Surd;
use crate::cf::{Mat2, Pcf};

fn number(n: &BigInt) -> serde_json::Number {
    n.to_string()
        .parse()
        .expect("decimal integer is a valid JSON number")
}

pub fn bigint<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    number(n).serialize(s)
}

pub fn bigints<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for n in v {
        seq.serialize_element(&number(n))?;
    }
    seq.end()
}

pub fn bigint_pair<S: Serializer>(v: &(BigInt, BigInt), s: S) -> Result<S::Ok, S::Error> {
    bigints(&[v.0.clone(), v.1.clone()], s)
}

pub fn mat2<S: Serializer>(m: &Mat2<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    let rows = [[number(&m.e11), number(&m.e12)], [number(&m.e21), number(&m.e22)]];
    rows.serialize(s)
}

pub fn rational_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl Serialize for Surd {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Surd", 4)?;
        st.serialize_field("exact", &self.to_string())?;
        st.serialize_field("a", &rational_string(self.a()))?;
        st.serialize_field("b", &rational_string(self.b()))?;
        st.serialize_field("radicand", &number(self.radicand()))?;
        st.end()
    }
}

impl Serialize for Pcf {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        struct Terms<'a>(&'a [BigInt]);
        impl Serialize for Terms<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                bigints(self.0, s)
            }
        }
        let mut st = s.serialize_struct("Pcf", 3)?;
        st.serialize_field("notation", &self.to_string())?;
        st.serialize_field("preperiod", &Terms(self.preperiod()))?;
        st.serialize_field("period", &Terms(self.period()))?;
        st.end()
    }
}
