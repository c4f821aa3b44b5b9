use std::collections::BTreeMap;
use std::fmt::{self, Write};

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

pub type Q = Ratio<i64>;

/// Dimensions h^{p,q} keyed by rational bidegree; zero entries are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BigradedTable {
    entries: BTreeMap<(Q, Q), i64>,
}

impl BigradedTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, p: Q, q: Q, c: i64) {
        if c == 0 {
            return;
        }
        let e = self.entries.entry((p, q)).or_insert(0);
        *e += c;
        if *e == 0 {
            self.entries.remove(&(p, q));
        }
    }

    pub fn add_table(&mut self, other: &BigradedTable, factor: i64) {
        for (&(p, q), &c) in &other.entries {
            self.add(p, q, c * factor);
        }
    }

    pub fn get(&self, p: Q, q: Q) -> i64 {
        self.entries.get(&(p, q)).copied().unwrap_or(0)
    }

    /// Shorthand for integral bidegrees.
    pub fn at(&self, p: i64, q: i64) -> i64 {
        self.get(Q::from(p), Q::from(q))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Q, Q, i64)> + '_ {
        self.entries.iter().map(|(&(p, q), &c)| (p, q, c))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// P(1,1).
    pub fn total(&self) -> i64 {
        self.entries.values().sum()
    }

    pub fn map_keys(&self, f: impl Fn(Q, Q) -> (Q, Q)) -> BigradedTable {
        let mut out = BigradedTable::new();
        for (p, q, c) in self.iter() {
            let (a, b) = f(p, q);
            out.add(a, b, c);
        }
        out
    }

    pub fn from_entries(items: impl IntoIterator<Item = (Q, Q, i64)>) -> Self {
        let mut t = BigradedTable::new();
        for (p, q, c) in items {
            t.add(p, q, c);
        }
        t
    }

    /// Polynomial text with exponents multiplied by `scale`, highest total degree first.
    pub fn render(&self, scale: i64) -> String {
        if self.is_empty() {
            return "0".to_string();
        }
        let mut terms: Vec<(Q, Q, i64)> = self.iter().map(|(p, q, c)| (p * scale, q * scale, c)).collect();
        terms.sort_by_key(|t| std::cmp::Reverse((t.0 + t.1, t.0)));
        let mut out = String::new();
        for (i, (p, q, c)) in terms.into_iter().enumerate() {
            let mono = [("u", p), ("v", q)]
                .iter()
                .filter(|(_, e)| !e.is_zero())
                .map(|(x, e)| if e.is_one() { x.to_string() } else { format!("{x}^{}", exponent(*e)) })
                .collect::<Vec<_>>()
                .join(" ");
            let mag = c.abs();
            let body = match (mag, mono.is_empty()) {
                (_, true) => mag.to_string(),
                (1, false) => mono,
                (_, false) => format!("{mag} {mono}"),
            };
            match (i, c < 0) {
                (0, false) => out.push_str(&body),
                (0, true) => write!(out, "-{body}").unwrap(),
                (_, false) => write!(out, " + {body}").unwrap(),
                (_, true) => write!(out, " - {body}").unwrap(),
            }
        }
        out
    }

    pub fn to_csv(&self, scale: i64) -> String {
        let mut out = String::from("p,q,h\n");
        for (p, q, c) in self.iter() {
            writeln!(out, "{},{},{}", fraction(p * scale), fraction(q * scale), c).unwrap();
        }
        out
    }

    /// Aligned three-column text.
    pub fn to_text(&self, scale: i64) -> String {
        let rows: Vec<[String; 3]> =
            self.iter().map(|(p, q, c)| [fraction(p * scale), fraction(q * scale), c.to_string()]).collect();
        let mut width = [1usize, 1, 1];
        for r in &rows {
            for (w, s) in width.iter_mut().zip(r) {
                *w = (*w).max(s.len());
            }
        }
        let mut out = format!("{:>w0$}  {:>w1$}  {:>w2$}\n", "p", "q", "h", w0 = width[0], w1 = width[1], w2 = width[2]);
        for r in rows {
            writeln!(out, "{:>w0$}  {:>w1$}  {:>w2$}", r[0], r[1], r[2], w0 = width[0], w1 = width[1], w2 = width[2]).unwrap();
        }
        out
    }

    /// Parses `p,q,h` rows (header optional).
    pub fn from_csv(text: &str) -> Result<Self, String> {
        let mut t = BigradedTable::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || (ln == 0 && line.replace(' ', "") == "p,q,h") {
                continue;
            }
            let parts: Vec<&str> = line.split(',').map(str::trim).collect();
            if parts.len() != 3 {
                return Err(format!("line {}: expected three columns", ln + 1));
            }
            let p = parse_fraction(parts[0]).ok_or_else(|| format!("line {}: bad p", ln + 1))?;
            let q = parse_fraction(parts[1]).ok_or_else(|| format!("line {}: bad q", ln + 1))?;
            let h: i64 = parts[2].parse().map_err(|_| format!("line {}: bad h", ln + 1))?;
            t.add(p, q, h);
        }
        Ok(t)
    }
}

impl fmt::Display for BigradedTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(1))
    }
}

pub fn fraction(q: Q) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn exponent(q: Q) -> String {
    if q.is_integer() && !q.is_negative() {
        q.to_integer().to_string()
    } else {
        format!("({})", fraction(q))
    }
}

pub fn parse_fraction(s: &str) -> Option<Q> {
    match s.split_once('/') {
        Some((a, b)) => {
            let n: i64 = a.trim().parse().ok()?;
            let d: i64 = b.trim().parse().ok()?;
            (d != 0).then(|| Q::new(n, d))
        }
        None => Some(Q::from(s.trim().parse::<i64>().ok()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> Q {
        Q::new(a, b)
    }

    #[test]
    fn zero_entries_vanish() {
        let mut t = BigradedTable::new();
        t.add(q(1, 3), q(2, 3), 2);
        t.add(q(1, 3), q(2, 3), -2);
        assert!(t.is_empty());
        assert_eq!(t.render(1), "0");
    }

    #[test]
    fn rendering() {
        let t = BigradedTable::from_entries([
            (q(0, 1), q(0, 1), 1),
            (q(1, 1), q(1, 1), 84),
            (q(3, 1), q(0, 1), 1),
            (q(0, 1), q(3, 1), 1),
            (q(2, 1), q(2, 1), 84),
            (q(3, 1), q(3, 1), 1),
        ]);
        assert_eq!(t.render(1), "u^3 v^3 + 84 u^2 v^2 + u^3 + v^3 + 84 u v + 1");
        assert_eq!(t.render(5).split(" + ").next(), Some("u^15 v^15"));
        let f = BigradedTable::from_entries([(q(2, 3), q(1, 3), 2), (q(0, 1), q(-1, 4), -1)]);
        assert_eq!(f.render(1), "2 u^(2/3) v^(1/3) - v^(-1/4)");
    }

    #[test]
    fn csv_round_trip() {
        let t = BigradedTable::from_entries([(q(2, 3), q(1, 3), 2), (q(1, 1), q(1, 1), 101)]);
        let csv = t.to_csv(1);
        assert_eq!(csv, "p,q,h\n2/3,1/3,2\n1,1,101\n");
        assert_eq!(BigradedTable::from_csv(&csv).unwrap(), t);
        assert!(BigradedTable::from_csv("p,q,h\n1,2\n").is_err());
        assert!(t.to_text(1).starts_with("  p    q    h\n"));
    }
}
