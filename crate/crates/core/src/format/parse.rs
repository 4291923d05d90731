use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{
    ConceptSpec, ConjunctionSpec, DimKindSpec, DimSpec, DomainSpec, FuzzySpec, IsaSpec,
    LabeledPoint, Loc, ParseError, Phase, RbfSpec, RegionSpec, SpaceSpec, Spanned, TrackSpec,
};

type PResult<T> = Result<T, ParseError>;

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    loc: Loc,
}

fn err<T>(loc: Loc, message: impl Into<String>) -> PResult<T> {
    Err(ParseError {
        line: loc.line,
        column: loc.column,
        message: message.into(),
    })
}

/// Whitespace-separated tokens up to the first one starting with `#`.
fn tokenize(line: &str, line_no: usize) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    let mut column = 0;
    for (byte, ch) in line.char_indices() {
        column += 1;
        if ch.is_whitespace() {
            if let Some((b, c)) = start.take() {
                out.push(Token {
                    text: &line[b..byte],
                    loc: Loc { line: line_no, column: c },
                });
            }
        } else if start.is_none() {
            if ch == '#' {
                return out;
            }
            start = Some((byte, column));
        }
    }
    if let Some((b, c)) = start {
        out.push(Token {
            text: &line[b..],
            loc: Loc { line: line_no, column: c },
        });
    }
    out
}

fn number(tok: Token<'_>) -> PResult<f64> {
    parse_float(tok.text).map_or_else(|| err(tok.loc, format!("expected a number, found `{}`", tok.text)), Ok)
}

fn parse_float(s: &str) -> Option<f64> {
    // reject inf/nan spellings; every finite literal starts with a digit, sign or dot
    let first = s.chars().next()?;
    if !(first.is_ascii_digit() || matches!(first, '-' | '+' | '.')) {
        return None;
    }
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

fn coords(tok: Token<'_>) -> PResult<Vec<f64>> {
    tok.text
        .split(',')
        .map(|part| {
            parse_float(part).map_or_else(
                || err(tok.loc, format!("expected comma-separated numbers, found `{}`", tok.text)),
                Ok,
            )
        })
        .collect()
}

fn interval(tok: Token<'_>) -> PResult<(f64, f64)> {
    let parsed = tok
        .text
        .split_once("..")
        .and_then(|(a, b)| Some((parse_float(a)?, parse_float(b)?)));
    parsed.map_or_else(|| err(tok.loc, format!("expected an interval `lo..hi`, found `{}`", tok.text)), Ok)
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn name(tok: Token<'_>) -> PResult<String> {
    if is_name(tok.text) {
        Ok(tok.text.to_string())
    } else {
        err(tok.loc, format!("invalid name `{}`", tok.text))
    }
}

/// Labels are any token without commas.
fn label(tok: Token<'_>) -> PResult<String> {
    if tok.text.contains(',') {
        err(tok.loc, format!("invalid label `{}`", tok.text))
    } else {
        Ok(tok.text.to_string())
    }
}

fn arity(toks: &[Token<'_>], expected: usize, usage: &str) -> PResult<()> {
    if toks.len() == expected {
        Ok(())
    } else if toks.len() < expected {
        let last = toks[toks.len() - 1];
        err(
            Loc { line: last.loc.line, column: last.loc.column + last.text.chars().count() },
            format!("incomplete line; expected `{usage}`"),
        )
    } else {
        err(toks[expected].loc, format!("unexpected `{}`; expected `{usage}`", toks[expected].text))
    }
}

fn positive(tok: Token<'_>, what: &str) -> PResult<f64> {
    let v = number(tok)?;
    if v > 0.0 {
        Ok(v)
    } else {
        err(tok.loc, format!("{what} must be positive, got {v}"))
    }
}

fn at_least_one(tok: Token<'_>, what: &str) -> PResult<f64> {
    let v = number(tok)?;
    if v >= 1.0 {
        Ok(v)
    } else {
        err(tok.loc, format!("{what} must be at least 1, got {v}"))
    }
}

/// Optional trailing `key value` pairs, each allowed once.
fn options<'a>(toks: &[Token<'a>], allowed: &[&str]) -> PResult<BTreeMap<String, Token<'a>>> {
    let mut out = BTreeMap::new();
    let mut i = 0;
    while i < toks.len() {
        let key = toks[i];
        if !allowed.contains(&key.text) {
            return err(key.loc, format!("unexpected `{}`; expected one of: {}", key.text, allowed.join(", ")));
        }
        let Some(value) = toks.get(i + 1) else {
            return err(key.loc, format!("`{}` needs a value", key.text));
        };
        if out.insert(key.text.to_string(), *value).is_some() {
            return err(key.loc, format!("`{}` given twice", key.text));
        }
        i += 2;
    }
    Ok(out)
}

/// Parses `.cspace` text. Fails on the first syntax, reference or
/// duplicate error, with its position.
pub fn parse_cspace(text: &str) -> Result<SpaceSpec, ParseError> {
    let mut spec = SpaceSpec::default();
    for (i, line) in text.lines().enumerate() {
        let toks = tokenize(line, i + 1);
        if let Some(first) = toks.first() {
            parse_line(&mut spec, first.text, &toks)?;
        }
    }
    validate(&spec)?;
    Ok(spec)
}

fn parse_line(spec: &mut SpaceSpec, keyword: &str, toks: &[Token<'_>]) -> PResult<()> {
    let loc = toks[0].loc;
    match keyword {
        "space" => {
            arity(toks, 3, "space inter <q>")?;
            if toks[1].text != "inter" {
                return err(toks[1].loc, format!("expected `inter`, found `{}`", toks[1].text));
            }
            if let Some(prev) = &spec.inter_exponent {
                return err(loc, format!("duplicate `space` line; first defined at {}", prev.loc));
            }
            spec.inter_exponent = Some(Spanned::new(at_least_one(toks[2], "inter-domain exponent")?, loc));
        }
        "domain" => {
            arity(toks, toks.len().max(2), "domain <name> [p <p>] [weight <w>]")?;
            let name = name(toks[1])?;
            let opts = options(&toks[2..], &["p", "weight"])?;
            let exponent = opts.get("p").map(|t| at_least_one(*t, "Minkowski exponent")).transpose()?;
            let weight = opts.get("weight").map(|t| positive(*t, "weight")).transpose()?;
            spec.domains.push(Spanned::new(DomainSpec { name, exponent, weight }, loc));
        }
        "dim" => {
            let usage = "dim <domain>.<name> linear <min> <max> | circular <period> [weight <w>]";
            arity(toks, toks.len().max(3), usage)?;
            let Some((domain, dim)) = toks[1].text.split_once('.') else {
                return err(toks[1].loc, format!("expected `<domain>.<name>`, found `{}`", toks[1].text));
            };
            if !is_name(domain) || !is_name(dim) {
                return err(toks[1].loc, format!("invalid dimension name `{}`", toks[1].text));
            }
            let (kind, rest) = match toks[2].text {
                "linear" => {
                    arity(toks, toks.len().max(5), usage)?;
                    let (min, max) = (number(toks[3])?, number(toks[4])?);
                    if min >= max {
                        return err(toks[3].loc, format!("empty range {min}..{max}"));
                    }
                    (DimKindSpec::Linear { min, max }, &toks[5..])
                }
                "circular" => {
                    arity(toks, toks.len().max(4), usage)?;
                    (DimKindSpec::Circular { period: positive(toks[3], "period")? }, &toks[4..])
                }
                other => return err(toks[2].loc, format!("expected `linear` or `circular`, found `{other}`")),
            };
            let opts = options(rest, &["weight"])?;
            let weight = opts.get("weight").map(|t| positive(*t, "weight")).transpose()?;
            spec.dims.push(Spanned::new(
                DimSpec { domain: domain.to_string(), name: dim.to_string(), kind, weight },
                loc,
            ));
        }
        "concept" => {
            let usage = "concept <label> box|hull|ball|exemplars ... [sigma <s>]";
            arity(toks, toks.len().max(3), usage)?;
            let label = label(toks[1])?;
            let mut rest = &toks[3..];
            let mut sigma = None;
            if rest.len() >= 2 && rest[rest.len() - 2].text == "sigma" {
                sigma = Some(positive(rest[rest.len() - 1], "sigma")?);
                rest = &rest[..rest.len() - 2];
            }
            let region = match toks[2].text {
                "box" => {
                    if rest.is_empty() {
                        return err(toks[2].loc, "box needs one `lo..hi` interval per dimension");
                    }
                    RegionSpec::Box(rest.iter().map(|t| interval(*t)).collect::<PResult<_>>()?)
                }
                "hull" => {
                    if rest.is_empty() {
                        return err(toks[2].loc, "hull needs at least one point");
                    }
                    RegionSpec::Hull(rest.iter().map(|t| coords(*t)).collect::<PResult<_>>()?)
                }
                "ball" => {
                    if rest.len() != 2 {
                        return err(toks[2].loc, "expected `ball <center> <radius>`");
                    }
                    let radius = number(rest[1])?;
                    if radius < 0.0 {
                        return err(rest[1].loc, format!("radius must be nonnegative, got {radius}"));
                    }
                    RegionSpec::Ball { center: coords(rest[0])?, radius }
                }
                "exemplars" => {
                    if let Some(t) = rest.first() {
                        return err(t.loc, format!("unexpected `{}`", t.text));
                    }
                    RegionSpec::Exemplars
                }
                other => {
                    return err(toks[2].loc, format!("expected box, hull, ball or exemplars, found `{other}`"))
                }
            };
            spec.concepts.push(Spanned::new(ConceptSpec { label, region, sigma }, loc));
        }
        "prototype" | "exemplar" => {
            arity(toks, 3, &format!("{keyword} <label> <coords>"))?;
            let p = LabeledPoint { label: label(toks[1])?, coords: coords(toks[2])? };
            if keyword == "prototype" {
                spec.prototypes.push(Spanned::new(p, loc));
            } else {
                spec.exemplars.push(Spanned::new(p, loc));
            }
        }
        "rbf" => {
            arity(toks, 4, "rbf <label> <coords> <width>")?;
            spec.rbf_units.push(Spanned::new(
                RbfSpec {
                    label: label(toks[1])?,
                    center: coords(toks[2])?,
                    width: positive(toks[3], "width")?,
                },
                loc,
            ));
        }
        "isa" => {
            arity(toks, 3, "isa <child> <parent>")?;
            spec.isa.push(Spanned::new(IsaSpec { child: label(toks[1])?, parent: label(toks[2])? }, loc));
        }
        "track" => {
            arity(toks, 5, "track pre|post <id> <t> <coords>")?;
            let phase = match toks[1].text {
                "pre" => Phase::Pre,
                "post" => Phase::Post,
                other => return err(toks[1].loc, format!("expected `pre` or `post`, found `{other}`")),
            };
            spec.tracks.push(Spanned::new(
                TrackSpec {
                    phase,
                    object_id: label(toks[2])?,
                    t: number(toks[3])?,
                    coords: coords(toks[4])?,
                },
                loc,
            ));
        }
        "fuzzy" => {
            arity(toks, 4, "fuzzy <predicate> <individual> <value>")?;
            let value = number(toks[3])?;
            if !(0.0..=1.0).contains(&value) {
                return err(toks[3].loc, format!("truth value {value} outside [0, 1]"));
            }
            spec.fuzzy.push(Spanned::new(
                FuzzySpec { predicate: label(toks[1])?, individual: label(toks[2])?, truth: value },
                loc,
            ));
        }
        "conjunction" => {
            arity(toks, toks.len().max(4), "conjunction <predicate> <conjunct> <conjunct>...")?;
            spec.conjunctions.push(Spanned::new(
                ConjunctionSpec {
                    predicate: label(toks[1])?,
                    conjuncts: toks[2..].iter().map(|t| label(*t)).collect::<PResult<_>>()?,
                },
                loc,
            ));
        }
        other => return err(loc, format!("unknown keyword `{other}`")),
    }
    Ok(())
}

fn duplicate<T>(loc: Loc, what: &str, first: Loc) -> PResult<T> {
    err(loc, format!("duplicate {what}; first defined at {first}"))
}

fn check_arity(loc: Loc, dims: usize, got: usize) -> PResult<()> {
    if dims == 0 {
        err(loc, "no dimensions defined")
    } else if got != dims {
        err(loc, format!("expected {dims} coordinates, got {got}"))
    } else {
        Ok(())
    }
}

fn validate(spec: &SpaceSpec) -> PResult<()> {
    let mut domains = HashMap::new();
    for d in &spec.domains {
        if let Some(first) = domains.insert(d.name.as_str(), d.loc) {
            return duplicate(d.loc, &format!("domain `{}`", d.name), first);
        }
    }
    let mut dims = HashMap::new();
    let mut closed = BTreeSet::new();
    let mut current: Option<&str> = None;
    for d in &spec.dims {
        let full = format!("{}.{}", d.domain, d.name);
        if let Some(first) = dims.insert(full.clone(), d.loc) {
            return duplicate(d.loc, &format!("dimension `{full}`"), first);
        }
        if current != Some(d.domain.as_str()) {
            if closed.contains(d.domain.as_str()) {
                return err(d.loc, format!("dimensions of domain `{}` must be contiguous", d.domain));
            }
            if let Some(prev) = current {
                closed.insert(prev);
            }
            current = Some(d.domain.as_str());
        }
    }
    for d in &spec.domains {
        if !spec.dims.iter().any(|x| x.domain == d.name) {
            return err(d.loc, format!("domain `{}` has no dimensions", d.name));
        }
    }
    let n = spec.dims.len();

    let mut concepts = HashMap::new();
    for c in &spec.concepts {
        if let Some(first) = concepts.insert(c.label.as_str(), c.loc) {
            return duplicate(c.loc, &format!("concept `{}`", c.label), first);
        }
        match &c.region {
            RegionSpec::Box(iv) => check_arity(c.loc, n, iv.len())?,
            RegionSpec::Hull(points) => {
                for p in points {
                    check_arity(c.loc, n, p.len())?;
                }
            }
            RegionSpec::Ball { center, .. } => check_arity(c.loc, n, center.len())?,
            RegionSpec::Exemplars => {
                if !spec.exemplars.iter().any(|e| e.label == c.label) {
                    return err(c.loc, format!("concept `{}` has no exemplars", c.label));
                }
            }
        }
    }
    let mut prototypes = HashMap::new();
    for p in &spec.prototypes {
        if let Some(first) = prototypes.insert(p.label.as_str(), p.loc) {
            return duplicate(p.loc, &format!("prototype `{}`", p.label), first);
        }
        check_arity(p.loc, n, p.coords.len())?;
    }
    for e in &spec.exemplars {
        check_arity(e.loc, n, e.coords.len())?;
    }
    for u in &spec.rbf_units {
        check_arity(u.loc, n, u.center.len())?;
    }
    let mut edges = HashMap::new();
    for e in &spec.isa {
        for l in [&e.child, &e.parent] {
            if !concepts.contains_key(l.as_str()) {
                return err(e.loc, format!("undefined concept `{l}`"));
            }
        }
        if let Some(first) = edges.insert((e.child.as_str(), e.parent.as_str()), e.loc) {
            return duplicate(e.loc, &format!("`isa {} {}`", e.child, e.parent), first);
        }
    }
    let mut last_time: HashMap<(Phase, &str), f64> = HashMap::new();
    for t in &spec.tracks {
        check_arity(t.loc, n, t.coords.len())?;
        if let Some(prev) = last_time.insert((t.phase, t.object_id.as_str()), t.t) {
            if t.t <= prev {
                return err(t.loc, format!("track `{}` time {} does not follow {prev}", t.object_id, t.t));
            }
        }
    }
    let mut facts = HashMap::new();
    for f in &spec.fuzzy {
        if let Some(first) = facts.insert((f.predicate.as_str(), f.individual.as_str()), f.loc) {
            return duplicate(f.loc, &format!("fuzzy value for {}({})", f.predicate, f.individual), first);
        }
    }
    let mut conj = HashMap::new();
    for c in &spec.conjunctions {
        if let Some(first) = conj.insert(c.predicate.as_str(), c.loc) {
            return duplicate(c.loc, &format!("conjunction `{}`", c.predicate), first);
        }
        for p in &c.conjuncts {
            if !spec.fuzzy.iter().any(|f| &f.predicate == p) {
                return err(c.loc, format!("undefined predicate `{p}`"));
            }
        }
    }
    Ok(())
}
