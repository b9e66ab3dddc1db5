//! Braid words, planar diagram codes and Wirtinger presentations.
//!
//! PD crossings follow the KnotTheory convention: `X[i,j,k,l]` lists the four
//! edge labels counterclockwise starting from the incoming under-strand, so the
//! under-strand runs `i -> k` and the over-strand joins `j` and `l`. The
//! orientation of the over-strand, and hence the crossing sign, is inferred by
//! walking the knot. A crossing is positive when the over-strand enters at `l`.
//!
//! Worked trefoil example (left-handed, all crossings negative):
//!
//! ```text
//! X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]
//! ```
//!
//! Braid words are written `n: i1 i2 ...` with `n` the strand count and each
//! `ik` a nonzero generator index, negative for an inverse letter.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{KnotError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BraidWord {
    strand_count: usize,
    letters: Vec<i64>,
}

impl BraidWord {
    /// Validates indices and that the closure is a knot.
    pub fn new(strand_count: usize, letters: Vec<i64>) -> Result<Self> {
        let word = Self::unchecked(strand_count, letters)?;
        let components = word.closure_components();
        if components != 1 {
            return Err(KnotError::NotAKnot { components });
        }
        Ok(word)
    }

    fn unchecked(strand_count: usize, letters: Vec<i64>) -> Result<Self> {
        if strand_count == 0 {
            return Err(KnotError::parse(1, 1, "strand count must be positive"));
        }
        for &l in &letters {
            if l == 0 {
                return Err(KnotError::IndexOutOfRange { index: 0, strands: strand_count });
            }
            if l.unsigned_abs() as usize >= strand_count {
                return Err(KnotError::IndexOutOfRange { index: l, strands: strand_count });
            }
        }
        Ok(Self { strand_count, letters })
    }

    pub fn strand_count(&self) -> usize {
        self.strand_count
    }

    /// Signed generator indices, `k` for `σ_k` and `-k` for its inverse.
    pub fn letters(&self) -> &[i64] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|&l| l > 0)
    }

    /// Strand permutation of the word: position `p` at the bottom ends at
    /// position `perm[p]` at the top.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strand_count).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        let mut perm = vec![0; self.strand_count];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }

    pub fn closure_components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; perm.len()];
        let mut cycles = 0;
        for s in 0..perm.len() {
            if seen[s] {
                continue;
            }
            cycles += 1;
            let mut p = s;
            while !seen[p] {
                seen[p] = true;
                p = perm[p];
            }
        }
        cycles
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.strand_count)?;
        for l in &self.letters {
            write!(f, " {l}")?;
        }
        Ok(())
    }
}

/// Integer tokens of `text` with 1-based line and column.
pub(crate) fn integer_tokens(text: &str, allowed: impl Fn(char) -> bool) -> Result<Vec<(i64, usize, usize)>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let ch = chars[i];
            if ch.is_ascii_digit() || (ch == '-' || ch == '+') && chars.get(i + 1).is_some_and(|c| c.is_ascii_digit()) {
                let start = i;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let tok: String = chars[start..i].iter().collect();
                let v = tok
                    .parse::<i64>()
                    .map_err(|_| KnotError::parse(ln + 1, start + 1, format!("integer out of range: {tok}")))?;
                out.push((v, ln + 1, start + 1));
            } else if ch.is_whitespace() || allowed(ch) {
                i += 1;
            } else {
                return Err(KnotError::parse(ln + 1, i + 1, format!("unexpected character '{ch}'")));
            }
        }
    }
    Ok(out)
}

/// Parses `n: i1 i2 ...`.
pub fn parse_braid(text: &str) -> Result<BraidWord> {
    let (head, body, body_col) = match text.find(':') {
        Some(p) => (&text[..p], &text[p + 1..], p + 2),
        None => return Err(KnotError::parse(1, 1, "expected `n: i1 i2 ...`")),
    };
    let strands = head.trim();
    let strand_count: usize = strands.parse().map_err(|_| {
        let col = head.len() - head.trim_start().len() + 1;
        KnotError::parse(1, col, format!("malformed strand count '{strands}'"))
    })?;
    let mut letters = Vec::new();
    let mut col = body_col;
    for piece in body.split_inclusive(char::is_whitespace) {
        let tok = piece.trim();
        if !tok.is_empty() {
            let lead = piece.len() - piece.trim_start().len();
            let v: i64 =
                tok.parse().map_err(|_| KnotError::parse(1, col + lead, format!("malformed letter '{tok}'")))?;
            letters.push(v);
        }
        col += piece.chars().count();
    }
    BraidWord::new(strand_count, letters)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Crossing {
    pub labels: [i64; 4],
    /// `+1` or `-1`.
    pub sign: i8,
}

impl Crossing {
    /// Slot (1 or 3) at which the over-strand enters.
    pub fn over_in(&self) -> usize {
        if self.sign > 0 {
            3
        } else {
            1
        }
    }

    pub fn over_out(&self) -> usize {
        4 - self.over_in()
    }

    /// Whether the strand through `slot` points into the crossing.
    pub fn is_incoming(&self, slot: usize) -> bool {
        slot == 0 || slot == self.over_in()
    }
}

/// A validated oriented knot diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PDCode {
    crossings: Vec<Crossing>,
    #[serde(skip)]
    partner: Vec<[(usize, usize); 4]>,
}

impl PDCode {
    /// Validates label multiplicities, component count and orientation, and
    /// infers crossing signs.
    pub fn from_tuples(tuples: &[[i64; 4]]) -> Result<Self> {
        let mut ends: BTreeMap<i64, Vec<(usize, usize)>> = BTreeMap::new();
        for (c, t) in tuples.iter().enumerate() {
            for (s, &label) in t.iter().enumerate() {
                ends.entry(label).or_default().push((c, s));
            }
        }
        if let Some((&label, v)) = ends.iter().find(|(_, v)| v.len() != 2) {
            return Err(KnotError::LabelMultiplicity { label, count: v.len() });
        }
        let mut partner = vec![[(0, 0); 4]; tuples.len()];
        for v in ends.values() {
            partner[v[0].0][v[0].1] = v[1];
            partner[v[1].0][v[1].1] = v[0];
        }
        // walk every component passing straight through crossings
        let mut visited = vec![[false; 4]; tuples.len()];
        let mut components = 0;
        let mut outgoing = vec![[None::<bool>; 4]; tuples.len()];
        for c0 in 0..tuples.len() {
            for s0 in [2, 0, 1, 3] {
                if visited[c0][s0] {
                    continue;
                }
                components += 1;
                let (mut c, mut s) = (c0, s0);
                loop {
                    visited[c][s] = true;
                    outgoing[c][s] = Some(true);
                    let (c2, s2) = partner[c][s];
                    visited[c2][s2] = true;
                    outgoing[c2][s2] = Some(false);
                    c = c2;
                    s = (s2 + 2) % 4;
                    if (c, s) == (c0, s0) {
                        break;
                    }
                }
            }
        }
        if tuples.is_empty() {
            components = 1;
        }
        if components != 1 {
            return Err(KnotError::NotAKnot { components });
        }
        let mut crossings = Vec::with_capacity(tuples.len());
        for (c, t) in tuples.iter().enumerate() {
            let dir = outgoing[c];
            if dir[0] != Some(false) || dir[2] != Some(true) {
                return Err(KnotError::Orientation(format!(
                    "crossing {} ({}) is traversed against its under-strand",
                    c + 1,
                    fmt_tuple(t)
                )));
            }
            let sign = if dir[3] == Some(false) { 1 } else { -1 };
            crossings.push(Crossing { labels: *t, sign });
        }
        Ok(Self { crossings, partner })
    }

    pub fn unknot() -> Self {
        Self { crossings: Vec::new(), partner: Vec::new() }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// The edge end at the other side of the edge leaving `crossing` at `slot`.
    pub fn partner(&self, crossing: usize, slot: usize) -> (usize, usize) {
        self.partner[crossing][slot]
    }

    pub fn signs(&self) -> impl Iterator<Item = i8> + '_ {
        self.crossings.iter().map(|c| c.sign)
    }

    pub fn writhe(&self) -> i64 {
        self.signs().map(i64::from).sum()
    }

    pub fn tuples(&self) -> Vec<[i64; 4]> {
        self.crossings.iter().map(|c| c.labels).collect()
    }
}

fn fmt_tuple(t: &[i64; 4]) -> String {
    format!("X[{},{},{},{}]", t[0], t[1], t[2], t[3])
}

impl fmt::Display for PDCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.crossings.iter().map(|c| fmt_tuple(&c.labels)).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Parses crossings as consecutive groups of four integer labels. Brackets,
/// commas and the markers `X` and `PD` are ignored.
pub fn parse_pd(text: &str) -> Result<PDCode> {
    let tokens = integer_tokens(text, |c| matches!(c, ',' | '[' | ']' | '(' | ')' | '{' | '}' | 'X' | 'P' | 'D'))?;
    if tokens.len() % 4 != 0 {
        let (_, line, col) = tokens[tokens.len() - tokens.len() % 4];
        return Err(KnotError::parse(line, col, "crossing with fewer than four labels"));
    }
    let tuples: Vec<[i64; 4]> = tokens.chunks(4).map(|ch| [ch[0].0, ch[1].0, ch[2].0, ch[3].0]).collect();
    PDCode::from_tuples(&tuples)
}

/// Planar diagram of the braid closure, one crossing per letter.
pub fn braid_to_pd(b: &BraidWord) -> Result<PDCode> {
    let n = b.strand_count();
    let mut cur: Vec<i64> = (1..=n as i64).collect();
    let mut next = n as i64 + 1;
    let mut tuples = Vec::with_capacity(b.len());
    for &l in b.letters() {
        let p = l.unsigned_abs() as usize - 1;
        let (a, bb) = (cur[p], cur[p + 1]);
        let (c, d) = (next, next + 1);
        next += 2;
        tuples.push(if l > 0 { [bb, d, c, a] } else { [a, bb, d, c] });
        cur[p] = c;
        cur[p + 1] = d;
    }
    let closing: BTreeMap<i64, i64> = cur.iter().enumerate().map(|(k, &lab)| (lab, k as i64 + 1)).collect();
    for t in &mut tuples {
        for lab in t.iter_mut() {
            if let Some(&init) = closing.get(lab) {
                *lab = init;
            }
        }
    }
    PDCode::from_tuples(&tuples)
}

pub fn is_positive_diagram(d: &PDCode) -> bool {
    d.signs().all(|s| s > 0)
}

/// Mirror image: `X[i,j,k,l] -> X[i,l,k,j]`, every sign flips.
pub fn mirror(d: &PDCode) -> PDCode {
    let crossings = d
        .crossings
        .iter()
        .map(|c| {
            let [i, j, k, l] = c.labels;
            Crossing { labels: [i, l, k, j], sign: -c.sign }
        })
        .collect();
    let partner = d
        .partner
        .iter()
        .map(|p| {
            let swap = |(c, s): (usize, usize)| (c, if s % 2 == 1 { 4 - s } else { s });
            [swap(p[0]), swap(p[3]), swap(p[2]), swap(p[1])]
        })
        .collect();
    PDCode { crossings, partner }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WirtingerPresentation {
    pub generator_count: usize,
    /// Words as `(generator, ±1)` letters.
    pub relators: Vec<Vec<(usize, i32)>>,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let nxt = parent[y];
        parent[y] = r;
        y = nxt;
    }
    r
}

/// One generator per arc, one relator per crossing.
pub fn wirtinger(d: &PDCode) -> Result<WirtingerPresentation> {
    if d.crossing_count() == 0 {
        return Err(KnotError::Degenerate("Wirtinger presentation needs at least one crossing".into()));
    }
    let labels: Vec<i64> = {
        let mut v: Vec<i64> = d.crossings.iter().flat_map(|c| c.labels).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let idx = |l: i64| labels.binary_search(&l).expect("label present");
    let mut parent: Vec<usize> = (0..labels.len()).collect();
    for c in &d.crossings {
        let (a, b) = (find(&mut parent, idx(c.labels[1])), find(&mut parent, idx(c.labels[3])));
        parent[a] = b;
    }
    let mut arc_of = vec![usize::MAX; labels.len()];
    let mut count = 0;
    for e in 0..labels.len() {
        let r = find(&mut parent, e);
        if arc_of[r] == usize::MAX {
            arc_of[r] = count;
            count += 1;
        }
        arc_of[e] = arc_of[r];
    }
    let arc = |l: i64| arc_of[idx(l)];
    let relators: Vec<Vec<(usize, i32)>> = d
        .crossings
        .iter()
        .map(|c| {
            let a = arc(c.labels[0]);
            let b = arc(c.labels[2]);
            let over = arc(c.labels[1]);
            let e = i32::from(c.sign);
            vec![(over, e), (a, 1), (over, -e), (b, -1)]
        })
        .collect();
    let w = WirtingerPresentation { generator_count: count, relators };
    w.check_abelianization()?;
    Ok(w)
}

impl WirtingerPresentation {
    /// Every relator has exponent sum zero and the relators identify all
    /// generators after abelianizing.
    pub fn check_abelianization(&self) -> Result<()> {
        let mut parent: Vec<usize> = (0..self.generator_count).collect();
        for rel in &self.relators {
            if rel.iter().map(|&(_, e)| e).sum::<i32>() != 0 {
                return Err(KnotError::Internal("relator with nonzero exponent sum".into()));
            }
            let pos: Vec<usize> = rel.iter().filter(|l| l.1 > 0).map(|l| l.0).collect();
            let neg: Vec<usize> = rel.iter().filter(|l| l.1 < 0).map(|l| l.0).collect();
            for (p, q) in pos.iter().zip(&neg) {
                let (a, b) = (find(&mut parent, *p), find(&mut parent, *q));
                parent[a] = b;
            }
        }
        let roots = (0..self.generator_count).filter(|&g| find(&mut parent, g) == g).count();
        if roots > 1 {
            return Err(KnotError::Internal(format!("abelianization has rank {roots}, expected 1")));
        }
        Ok(())
    }
}
