use std::fmt;

use serde::{Deserialize, Serialize};

use crate::matrix::{ew_add, ew_sub, hadamard, Cells, CountMatrix};
use crate::error::MatrixError;
use crate::structure::StructureBundle;
use crate::utilization::UtilizationBundle;

/// A named matrix from the structure or utilization bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Symbol {
    A,
    P,
    PHat,
    E,
    EHat,
    F,
    D,
    L,
    T,
    Tc,
    FHat,
    DHat,
    LHat,
    THat,
    TcHat,
}

impl Symbol {
    pub const ALL: [Symbol; 15] = [
        Symbol::A,
        Symbol::P,
        Symbol::PHat,
        Symbol::E,
        Symbol::EHat,
        Symbol::F,
        Symbol::D,
        Symbol::L,
        Symbol::T,
        Symbol::Tc,
        Symbol::FHat,
        Symbol::DHat,
        Symbol::LHat,
        Symbol::THat,
        Symbol::TcHat,
    ];

    pub fn notation(self) -> &'static str {
        match self {
            Symbol::A => "A",
            Symbol::P => "P",
            Symbol::PHat => "P̂",
            Symbol::E => "E",
            Symbol::EHat => "Ê",
            Symbol::F => "F",
            Symbol::D => "D",
            Symbol::L => "L",
            Symbol::T => "T",
            Symbol::Tc => "Tᶜ",
            Symbol::FHat => "F̂",
            Symbol::DHat => "D̂",
            Symbol::LHat => "L̂",
            Symbol::THat => "T̂",
            Symbol::TcHat => "T̂ᶜ",
        }
    }

    /// Stable file stem used when writing matrices to disk.
    pub fn file_stem(self) -> &'static str {
        match self {
            Symbol::A => "A",
            Symbol::P => "P",
            Symbol::PHat => "P_hat",
            Symbol::E => "E",
            Symbol::EHat => "E_hat",
            Symbol::F => "F",
            Symbol::D => "D",
            Symbol::L => "L",
            Symbol::T => "T",
            Symbol::Tc => "Tc",
            Symbol::FHat => "F_hat",
            Symbol::DHat => "D_hat",
            Symbol::LHat => "L_hat",
            Symbol::THat => "T_hat",
            Symbol::TcHat => "Tc_hat",
        }
    }

    pub fn is_binary(self) -> bool {
        matches!(
            self,
            Symbol::A
                | Symbol::PHat
                | Symbol::EHat
                | Symbol::FHat
                | Symbol::DHat
                | Symbol::LHat
                | Symbol::THat
                | Symbol::TcHat
        )
    }

    pub fn lookup(self, s: &StructureBundle, u: &UtilizationBundle) -> CountMatrix {
        match self {
            Symbol::A => s.a.to_counts(),
            Symbol::P => s.p.clone(),
            Symbol::PHat => s.p_hat.to_counts(),
            Symbol::E => s.e.clone(),
            Symbol::EHat => s.e_hat.to_counts(),
            Symbol::F => u.f.clone(),
            Symbol::D => u.d.clone(),
            Symbol::L => u.l.clone(),
            Symbol::T => u.t.clone(),
            Symbol::Tc => u.tc.clone(),
            Symbol::FHat => u.f_hat.to_counts(),
            Symbol::DHat => u.d_hat.to_counts(),
            Symbol::LHat => u.l_hat.to_counts(),
            Symbol::THat => u.t_hat.to_counts(),
            Symbol::TcHat => u.tc_hat.to_counts(),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.notation())
    }
}

/// Expression tree over bundle matrices.
///
/// JSON shape: `{"sym":"E_HAT"}`, `"zero"`, `{"hadamard":[lhs, rhs]}`,
/// `{"add":[…]}`, `{"sub":[…]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expr {
    Sym(Symbol),
    Zero,
    Hadamard(Box<Expr>, Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn hadamard(self, rhs: Expr) -> Expr {
        Expr::Hadamard(Box::new(self), Box::new(rhs))
    }

    pub fn plus(self, rhs: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(rhs))
    }

    pub fn minus(self, rhs: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(rhs))
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        self.collect_symbols(&mut out);
        out
    }

    fn collect_symbols(&self, out: &mut Vec<Symbol>) {
        match self {
            Expr::Sym(s) => out.push(*s),
            Expr::Zero => {}
            Expr::Hadamard(a, b) | Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.collect_symbols(out);
                b.collect_symbols(out);
            }
        }
    }

    pub fn eval(&self, s: &StructureBundle, u: &UtilizationBundle) -> Result<CountMatrix, MatrixError> {
        Ok(match self {
            Expr::Sym(sym) => sym.lookup(s, u),
            Expr::Zero => CountMatrix::zeros(Cells::dim(&s.a)),
            Expr::Hadamard(a, b) => hadamard(&a.eval(s, u)?, &b.eval(s, u)?)?,
            Expr::Add(a, b) => ew_add(&a.eval(s, u)?, &b.eval(s, u)?)?,
            Expr::Sub(a, b) => ew_sub(&a.eval(s, u)?, &b.eval(s, u)?)?,
        })
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Sym(_) | Expr::Zero => 3,
            Expr::Hadamard(..) => 2,
            Expr::Add(..) | Expr::Sub(..) => 1,
        }
    }

    fn fmt_operand(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl From<Symbol> for Expr {
    fn from(s: Symbol) -> Self {
        Expr::Sym(s)
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Sym(s) => write!(f, "{s}"),
            Expr::Zero => f.write_str("0"),
            Expr::Hadamard(a, b) => {
                a.fmt_operand(f, 2)?;
                f.write_str(" ∘ ")?;
                b.fmt_operand(f, 3)
            }
            Expr::Add(a, b) => {
                a.fmt_operand(f, 1)?;
                f.write_str(" + ")?;
                b.fmt_operand(f, 2)
            }
            Expr::Sub(a, b) => {
                a.fmt_operand(f, 1)?;
                f.write_str(" − ")?;
                b.fmt_operand(f, 2)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Symbol::*;

    fn s(sym: Symbol) -> Expr {
        Expr::Sym(sym)
    }

    #[test]
    fn renders_with_minimal_parentheses() {
        assert_eq!(s(A).hadamard(s(D)).minus(s(F)).to_string(), "A ∘ D − F");
        assert_eq!(s(F).plus(s(T)).plus(s(Tc)).to_string(), "F + T + Tᶜ");
        assert_eq!(s(D).minus(s(F).plus(s(T))).to_string(), "D − (F + T)");
        assert_eq!(s(A).hadamard(s(F)).hadamard(s(EHat).hadamard(s(D))).to_string(), "A ∘ F ∘ (Ê ∘ D)");
        assert_eq!(s(TcHat).hadamard(Expr::Zero).to_string(), "T̂ᶜ ∘ 0");
    }

    #[test]
    fn json_shape() {
        let e = s(EHat).hadamard(s(L));
        let json = serde_json::to_string(&e).unwrap();
        assert_eq!(json, r#"{"hadamard":[{"sym":"E_HAT"},{"sym":"L"}]}"#);
        assert_eq!(serde_json::from_str::<Expr>(&json).unwrap(), e);
        assert_eq!(serde_json::from_str::<Expr>(r#""zero""#).unwrap(), Expr::Zero);
        assert_eq!(serde_json::to_string(&TcHat).unwrap(), r#""TC_HAT""#);
    }

    #[test]
    fn symbol_collection() {
        let e = s(A).hadamard(s(D)).minus(s(F));
        assert_eq!(e.symbols(), vec![A, D, F]);
        assert!(Symbol::ALL.iter().filter(|s| s.is_binary()).count() == 8);
    }
}
