use super::Formula;

/// Output syntax for formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dialect {
    /// The `.lpmln` syntax: `not & | -> bot top`.
    Internal,
    /// f2lp input syntax: `not & | -> false true`.
    F2lp,
}

// Binding strength, loosest first.
const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

/// Prints a formula with the fewest parentheses that parse back to the same tree.
pub fn render(f: &Formula, dialect: Dialect) -> String {
    let mut out = String::new();
    write(&mut out, f, dialect, IMP);
    out
}

fn write(out: &mut String, f: &Formula, dialect: Dialect, min: u8) {
    let (top, bot) = match dialect {
        Dialect::Internal => ("top", "bot"),
        Dialect::F2lp => ("true", "false"),
    };
    if f.is_top() {
        out.push_str(top);
        return;
    }
    if let Some(g) = f.as_negation() {
        out.push_str("not ");
        write(out, g, dialect, UNARY);
        return;
    }
    let (prec, op, lhs, rhs, lmin, rmin) = match f {
        Formula::Atom(a) => {
            out.push_str(a);
            return;
        }
        Formula::Bottom => {
            out.push_str(bot);
            return;
        }
        Formula::And(l, r) => (AND, " & ", l, r, AND, UNARY),
        Formula::Or(l, r) => (OR, " | ", l, r, OR, AND),
        Formula::Implies(l, r) => (IMP, " -> ", l, r, OR, IMP),
    };
    let paren = prec < min;
    if paren {
        out.push('(');
    }
    write(out, lhs, dialect, lmin);
    out.push_str(op);
    write(out, rhs, dialect, rmin);
    if paren {
        out.push(')');
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_formula;

    fn a() -> Formula {
        Formula::atom("a")
    }

    #[test]
    fn f2lp_examples() {
        let f = Formula::or(Formula::not(a()), Formula::atom("b"));
        assert_eq!(render(&f, Dialect::F2lp), "not a | b");
        let g = Formula::implies(Formula::not(Formula::not(a())), a());
        assert_eq!(render(&g, Dialect::F2lp), "not not a -> a");
        assert_eq!(render(&Formula::top(), Dialect::Internal), "top");
        assert_eq!(render(&Formula::top(), Dialect::F2lp), "true");
        assert_eq!(render(&Formula::Bottom, Dialect::F2lp), "false");
    }

    #[test]
    fn parenthesizes_only_when_needed() {
        for text in [
            "(f -> g) -> k",
            "f -> g -> k",
            "a | (b | c)",
            "a | b | c",
            "(a | b) & c",
            "not (a -> b)",
            "not not a",
            "a & b | c",
            "not top",
            "bot -> a",
        ] {
            let f = parse_formula(text).unwrap();
            assert_eq!(render(&f, Dialect::Internal), text);
        }
    }
}
