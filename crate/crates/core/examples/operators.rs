//! Build qudit operators, combine them, and inspect the canonical form.
use dqir::dqir::{eq, neq, all_different, DomainSpec, OperatorPoly, Primitive};

fn main() -> dqir::Result<()> {
    let dom = DomainSpec::new([("x", 3), ("y", 3), ("z", 3)])?;
    let n = OperatorPoly::primitive(&dom, "x", Primitive::Number)?;
    let p1 = OperatorPoly::indicator(&dom, "y", 1)?;
    println!("N_x + P_y(1):\n{}", n.add(&p1)?.simplify());

    let e = eq(&dom, "x", "y")?;
    println!("EQ(x,y) has {} terms, boolean: {}", e.len(), e.check_boolean().is_ok());
    let sq = e.mul(&e)?.simplify();
    println!("EQ^2 == EQ: {}", sq.approx_eq(&e, 1e-12));
    println!("NEQ(x,y) at (0,2): {}", neq(&dom, "x", "y")?.diagonal_value(&[0, 2, 0]).re);

    let ad = all_different(&dom, &["x", "y", "z"])?;
    let perms = dom.states().filter(|s| ad.diagonal_value(s).re > 0.5).count();
    println!("AD over 3 trits accepts {perms} states");
    let back = OperatorPoly::from_json_str(&ad.to_json_string())?;
    println!("JSON round trip exact: {}", back == ad);
    Ok(())
}
