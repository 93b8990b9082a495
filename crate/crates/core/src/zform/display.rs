use super::{Element, Monomial};
use crate::arith::Ring;
use std::collections::BTreeMap;
use std::fmt;

/// A signed coefficient string, split so that terms can be joined with
/// " + " / " - ".
fn split_sign(s: String) -> (bool, String) {
    match s.strip_prefix('-') {
        Some(rest) => (true, rest.to_string()),
        None => (false, s),
    }
}

fn with_coeff(coef: &str, body: &str, sep: &str) -> String {
    match (coef, body.is_empty()) {
        (c, true) => c.to_string(),
        ("1", false) => body.to_string(),
        (c, false) => format!("{c}{sep}{body}"),
    }
}

fn join_signed(parts: Vec<(bool, String)>, plus: &str, minus: &str) -> String {
    let mut out = String::new();
    for (i, (neg, body)) in parts.into_iter().enumerate() {
        match (i, neg) {
            (0, false) => {}
            (0, true) => out.push('-'),
            (_, false) => out.push_str(plus),
            (_, true) => out.push_str(minus),
        }
        out.push_str(&body);
    }
    out
}

impl<R: Ring> fmt::Display for Element<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let ring = self.ring;
        let mut groups: BTreeMap<(u64, u64), Vec<(u64, &R::Elem)>> = BTreeMap::new();
        for (Monomial { a, b, c }, coef) in self.terms() {
            groups.entry((*a, *c)).or_default().push((*b, coef));
        }
        let mut keys: Vec<(u64, u64)> = groups.keys().copied().collect();
        keys.sort_by(|x, y| (y.0 + y.1, y.0, y.1).cmp(&(x.0 + x.1, x.0, x.1)));

        let letter = |name: &str, n: u64| if n == 0 { String::new() } else { format!("{name}({n})") };
        let mut parts = Vec::new();
        for (a, c) in keys {
            let mut hs = groups[&(a, c)].clone();
            hs.sort_by(|x, y| y.0.cmp(&x.0));
            if (a, c) == (0, 0) || hs.len() == 1 {
                for (b, coef) in hs {
                    let (neg, mag) = split_sign(ring.format(coef));
                    let body = format!("{}{}{}", letter("f", a), letter("h", b), letter("e", c));
                    parts.push((neg, with_coeff(&mag, &body, " ")));
                }
            } else {
                let inner: Vec<(bool, String)> = hs
                    .into_iter()
                    .map(|(b, coef)| {
                        let (neg, mag) = split_sign(ring.format(coef));
                        (neg, with_coeff(&mag, &letter("h", b), " "))
                    })
                    .collect();
                let poly = format!("({})", join_signed(inner, "+", "-"));
                let body: Vec<String> = [letter("f", a), poly, letter("e", c)]
                    .into_iter()
                    .filter(|s| !s.is_empty())
                    .collect();
                parts.push((false, body.join(" ")));
            }
        }
        write!(f, "{}", join_signed(parts, " + ", " - "))
    }
}
