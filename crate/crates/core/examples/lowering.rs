//! Lower a qudit operator to Pauli strings under different encodings.
use dqir::dqir::{DomainSpec, OperatorPoly, Primitive};
use dqir::encoding::{lower, CodeSpec, EncodingAssignment};

fn main() -> dqir::Result<()> {
    let dom = DomainSpec::uniform("x", 1, 4);
    let n = OperatorPoly::primitive(&dom, "x0", Primitive::Number)?;
    let hop = OperatorPoly::primitive(&dom, "x0", Primitive::Symmetric(1, 2))?;
    for code in [CodeSpec::Sb, CodeSpec::Gray, CodeSpec::Unary, CodeSpec::DomainWall] {
        let asg = EncodingAssignment::uniform(&dom, code)?;
        println!("== {code}\nN:\n{}\n|1><2|+h.c.:\n{}", lower(&n, &asg)?, lower(&hop, &asg)?);
    }
    Ok(())
}
