use super::Formula;

#[derive(Clone, Copy)]
enum Style {
    Minimal,
    Parenthesized,
    Unicode,
}

struct Glyphs {
    not: &'static str,
    con: &'static str,
    noncon: &'static str,
    acc: &'static str,
    ess: &'static str,
    dia: &'static str,
    nec: &'static str,
    ann: &'static str,
    whether: &'static str,
    and: &'static str,
    or: &'static str,
    implies: &'static str,
    iff: &'static str,
    top: &'static str,
    bot: &'static str,
}

const ASCII: Glyphs = Glyphs {
    not: "~",
    con: "C ",
    noncon: "D ",
    acc: "A ",
    ess: "O ",
    dia: "<>",
    nec: "[]",
    ann: "[!",
    whether: "[?",
    and: " & ",
    or: " | ",
    implies: " -> ",
    iff: " <-> ",
    top: "true",
    bot: "false",
};

const UNICODE: Glyphs = Glyphs {
    not: "¬",
    con: "∇",
    noncon: "Δ",
    acc: "•",
    ess: "∘",
    dia: "◇",
    nec: "□",
    ann: "[",
    whether: "[?",
    and: " ∧ ",
    or: " ∨ ",
    implies: " → ",
    iff: " ↔ ",
    top: "⊤",
    bot: "⊥",
};

const UNARY: u8 = 5;

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => 1,
        Formula::Implies(..) => 2,
        Formula::Or(..) => 3,
        Formula::And(..) => 4,
        _ => UNARY,
    }
}

struct Printer {
    style: Style,
    glyphs: &'static Glyphs,
    out: String,
}

impl Printer {
    fn child(&mut self, f: &Formula, parens: bool) {
        if parens {
            self.out.push('(');
            self.formula(f);
            self.out.push(')');
        } else {
            self.formula(f);
        }
    }

    fn unary(&mut self, op: &str, operand: &Formula) {
        let parens = match self.style {
            Style::Parenthesized => !operand.children().is_empty() && precedence(operand) < UNARY,
            _ => precedence(operand) < UNARY,
        };
        if parens {
            // `A(p & q)` rather than `A (p & q)`
            self.out.push_str(op.trim_end());
        } else {
            self.out.push_str(op);
        }
        self.child(operand, parens);
    }

    fn binary(&mut self, op: &str, a: &Formula, b: &Formula, level: u8, right_assoc: bool) {
        let (pa, pb) = match self.style {
            Style::Parenthesized => (precedence(a) < UNARY, precedence(b) < UNARY),
            _ if right_assoc => (precedence(a) <= level, precedence(b) < level),
            _ => (precedence(a) < level, precedence(b) <= level),
        };
        self.child(a, pa);
        self.out.push_str(op);
        self.child(b, pb);
    }

    fn formula(&mut self, f: &Formula) {
        let g = self.glyphs;
        match f {
            Formula::Atom(name) => self.out.push_str(name),
            Formula::Top => self.out.push_str(g.top),
            Formula::Bot => self.out.push_str(g.bot),
            Formula::Not(a) => self.unary(g.not, a),
            Formula::Con(a) => self.unary(g.con, a),
            Formula::NonCon(a) => self.unary(g.noncon, a),
            Formula::Acc(a) => self.unary(g.acc, a),
            Formula::Ess(a) => self.unary(g.ess, a),
            Formula::Diamond(a) => self.unary(g.dia, a),
            Formula::Box(a) => self.unary(g.nec, a),
            Formula::Ann(psi, body) | Formula::AnnWhether(psi, body) => {
                let open = if matches!(f, Formula::Ann(..)) {
                    g.ann
                } else {
                    g.whether
                };
                self.out.push_str(open);
                self.formula(psi);
                self.out.push_str("] ");
                let parens = match self.style {
                    Style::Parenthesized => !body.children().is_empty() && precedence(body) < UNARY,
                    _ => precedence(body) < UNARY,
                };
                self.child(body, parens);
            }
            Formula::And(a, b) => self.binary(g.and, a, b, 4, false),
            Formula::Or(a, b) => self.binary(g.or, a, b, 3, false),
            Formula::Implies(a, b) => self.binary(g.implies, a, b, 2, true),
            Formula::Iff(a, b) => self.binary(g.iff, a, b, 1, false),
        }
    }
}

fn run(f: &Formula, style: Style) -> String {
    let glyphs = match style {
        Style::Unicode => &UNICODE,
        _ => &ASCII,
    };
    let mut p = Printer {
        style,
        glyphs,
        out: String::new(),
    };
    p.formula(f);
    p.out
}

/// Renders `f` in the ASCII grammar with as few parentheses as the precedence
/// rules allow. The output parses back to `f`.
pub fn render(f: &Formula) -> String {
    run(f, Style::Minimal)
}

/// Renders with every binary subformula parenthesized.
pub fn render_parenthesized(f: &Formula) -> String {
    run(f, Style::Parenthesized)
}

/// Renders with logical symbols. Output only: the parser accepts ASCII.
pub fn render_unicode(f: &Formula) -> String {
    run(f, Style::Unicode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{atom, parse};

    #[test]
    fn render_examples() {
        let p = atom("p");
        assert_eq!(render(&Formula::acc(p.clone())), "A p");
        let a6 = Formula::implies(
            Formula::con(p.clone()),
            Formula::or(Formula::acc(p.clone()), Formula::acc(Formula::not(p.clone()))),
        );
        assert_eq!(render(&a6), "C p -> A p | A ~p");
        assert_eq!(render_unicode(&a6), "∇p → •p ∨ •¬p");
    }

    #[test]
    fn parenthesization_roundtrips() {
        for text in [
            "(p -> q) -> r",
            "p -> q -> r",
            "(p & q) & r",
            "p & (q & r)",
            "~(p & q)",
            "A(p -> q) & A(~p -> r) -> A p",
            "[! A p] ~A p",
            "[!p & q] (r | s)",
            "[?[!p] q] D O <> [] true",
            "(p <-> q) <-> r",
            "p <-> (q <-> r)",
        ] {
            let f = parse(text).unwrap();
            assert_eq!(parse(&render(&f)).unwrap(), f, "{text}");
            assert_eq!(parse(&render_parenthesized(&f)).unwrap(), f, "{text}");
        }
        assert_eq!(render(&parse("(p -> q) -> r").unwrap()), "(p -> q) -> r");
        assert_eq!(render_parenthesized(&parse("p & q | r").unwrap()), "(p & q) | r");
    }
}
