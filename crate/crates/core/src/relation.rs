//! Linear identities between the GP parameters `n` and `k`.
//!
//! Every relation has the shape `a·n = c·k + d` over the integers. `a = 0`
//! encodes a fixed `k` (`k = -d/c`). The named girth and exception lists are
//! exposed as constant slices so callers never match on strings.

use std::fmt;

/// `n_coeff·n = k_coeff·k + offset`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Relation {
    pub n_coeff: i64,
    pub k_coeff: i64,
    pub offset: i64,
}

impl Relation {
    pub const fn linear(n_coeff: i64, k_coeff: i64, offset: i64) -> Self {
        Relation {
            n_coeff,
            k_coeff,
            offset,
        }
    }

    pub const fn k_equals(k: i64) -> Self {
        Relation::linear(0, 1, -k)
    }

    pub fn holds(&self, n: usize, k: usize) -> bool {
        self.n_coeff * n as i64 == self.k_coeff * k as i64 + self.offset
    }

    /// Canonical representative: coefficients divided by their gcd, `n_coeff`
    /// non-negative, and `k_coeff` positive when `n_coeff` is zero.
    pub fn normalized(self) -> Self {
        let g = gcd(gcd(self.n_coeff, self.k_coeff), self.offset).max(1);
        let mut r = Relation::linear(self.n_coeff / g, self.k_coeff / g, self.offset / g);
        if r.n_coeff < 0 || (r.n_coeff == 0 && r.k_coeff < 0) {
            r = Relation::linear(-r.n_coeff, -r.k_coeff, -r.offset);
        }
        r
    }

    /// Whether some valid GP parameter pair (`n >= 5`, `1 <= k < n/2`)
    /// satisfies the relation. Solutions of a linear identity repeat with
    /// period at most `n_coeff` in `k`, so a bounded search is exhaustive
    /// for the small coefficients used here.
    pub fn admits_gp_solution(&self) -> bool {
        self.gp_solutions(2000).next().is_some()
    }

    /// Valid `(n, k)` pairs with `k <= k_max` satisfying the relation; for
    /// `n_coeff = 0` the smallest admissible `n` is reported.
    pub fn gp_solutions(&self, k_max: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..=k_max).filter_map(move |k| {
            let rhs = self.k_coeff * k as i64 + self.offset;
            if self.n_coeff == 0 {
                return (rhs == 0).then(|| ((2 * k + 1).max(5), k));
            }
            if rhs % self.n_coeff != 0 {
                return None;
            }
            let n = rhs / self.n_coeff;
            (n >= 5 && 2 * (k as i64) < n).then_some((n as usize, k))
        })
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Relation {
            n_coeff: a,
            k_coeff: c,
            offset: d,
        } = *self;
        if a == 0 {
            if c != 0 && d % c == 0 {
                return write!(f, "k={}", -d / c);
            }
            return write!(f, "{c}k={}", -d);
        }
        // k = n - d reads better than n = k + d
        if a == 1 && c == 1 && d > 0 {
            return write!(f, "k=n-{d}");
        }
        if c == 0 {
            return if d % a == 0 {
                write!(f, "n={}", d / a)
            } else {
                write!(f, "{a}n={d}")
            };
        }
        let k_term = match c {
            1 => "k".to_string(),
            -1 => "-k".to_string(),
            c => format!("{c}k"),
        };
        if d == 0 && a != 1 {
            return write!(f, "n={k_term}/{a}");
        }
        if a != 1 {
            write!(f, "{a}")?;
        }
        write!(f, "n={k_term}")?;
        match d.signum() {
            1 => write!(f, "+{d}"),
            -1 => write!(f, "{d}"),
            _ => Ok(()),
        }
    }
}

const fn lin(a: i64, c: i64, d: i64) -> Relation {
    Relation::linear(a, c, d)
}

const fn keq(k: i64) -> Relation {
    Relation::k_equals(k)
}

/// Girth classes below 8, in the order they are tested. A min-k
/// representative matching none of these has girth 8.
pub const GIRTH_CLASSES: [(usize, &[Relation]); 5] = [
    (3, &[lin(1, 3, 0)]),
    (4, &[keq(1), lin(1, 4, 0)]),
    (5, &[keq(2), lin(1, 5, 0), lin(2, 5, 0)]),
    (6, &[keq(3), lin(1, 6, 0), lin(1, 2, 2)]),
    (
        7,
        &[
            keq(4),
            lin(1, 7, 0),
            lin(2, 7, 0),
            lin(3, 7, 0),
            lin(1, 2, 3),
            lin(1, 3, 2),
            lin(1, 3, -2),
        ],
    ),
];

/// Parameter families for which a girth-8 min-k graph may contain two
/// 8-cycles meeting in a 2-edge path.
pub const GIRTH8_EXCEPTIONS: [Relation; 6] = [
    keq(5),
    lin(1, 2, 4),
    lin(1, 3, 3),
    lin(1, 3, -3),
    lin(1, 4, 2),
    lin(1, 4, -2),
];

/// The complete list of min-k parameter families not covered by the
/// cop-number-4 guarantee, at any girth.
pub const ALL_EXCEPTIONS: [Relation; 22] = [
    keq(1),
    keq(2),
    keq(3),
    keq(4),
    keq(5),
    lin(1, 2, 2),
    lin(1, 2, 3),
    lin(1, 2, 4),
    lin(1, 3, 0),
    lin(1, 3, 2),
    lin(1, 3, -2),
    lin(1, 3, 3),
    lin(1, 3, -3),
    lin(1, 4, 0),
    lin(1, 4, 2),
    lin(1, 4, -2),
    lin(1, 5, 0),
    lin(2, 5, 0),
    lin(1, 6, 0),
    lin(1, 7, 0),
    lin(2, 7, 0),
    lin(3, 7, 0),
];

/// Parses the textual forms produced by `Display`, e.g. `k=5`, `n=3k-3`,
/// `2n=5k+1`, `n=7k/3`, `k=n-3`, `n=8`.
pub fn parse_relation(text: &str) -> Option<Relation> {
    let text = text.trim();
    let (lhs, rhs) = text.split_once('=')?;
    if lhs == "k" {
        if let Some(rest) = rhs.strip_prefix("n-") {
            return Some(lin(1, 1, rest.parse().ok()?));
        }
        return Some(keq(rhs.parse().ok()?));
    }
    let n_coeff: i64 = match lhs.strip_suffix('n')? {
        "" => 1,
        c => c.parse().ok()?,
    };
    if let Some((num, den)) = rhs.split_once('/') {
        let c = parse_k_term(num)?;
        return Some(lin(den.parse().ok()?, c, 0));
    }
    let Some(kpos) = rhs.find('k') else {
        return Some(lin(n_coeff, 0, rhs.parse().ok()?));
    };
    let k_coeff = parse_k_term(&rhs[..=kpos])?;
    let offset = match &rhs[kpos + 1..] {
        "" => 0,
        rest => rest.strip_prefix('+').unwrap_or(rest).parse().ok()?,
    };
    Some(lin(n_coeff, k_coeff, offset))
}

fn parse_k_term(term: &str) -> Option<i64> {
    match term.strip_suffix('k')? {
        "" => Some(1),
        "-" => Some(-1),
        c => c.parse().ok(),
    }
}
