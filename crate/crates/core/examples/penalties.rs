//! Constraint penalties and the penalized cost.
use dqir::dqir::DomainSpec;
use dqir::encoding::{CodeSpec, EncodingAssignment};
use dqir::penalties::{effective_cost, f_perm, f_ss, CostOperand, ValidityOptions};
use dqir::report::tsp_instance;

fn main() -> dqir::Result<()> {
    let tsp = tsp_instance(3);
    let h = tsp.cost()?;
    let dom = h.domain().clone();
    let fp = f_perm(&dom, None)?;
    println!("F_perm at (0,0,1) = {}", fp.diagonal_value(&[0, 0, 1]).re);

    let asg = EncodingAssignment::uniform(&dom, CodeSpec::Sb)?;
    let ss = f_ss(&asg, "p0", ValidityOptions::default())?;
    println!("SB validity penalty at d=3:\n{ss}");

    if let CostOperand::Dqir(c) = effective_cost(&h, &[(20.0, CostOperand::Dqir(fp))], None)? {
        let best = dom.states().min_by(|a, b| c.diagonal_value(a).re.total_cmp(&c.diagonal_value(b).re)).unwrap();
        println!("penalized minimizer {best:?}");
    }
    let unary = DomainSpec::uniform("u", 1, 3);
    let ua = EncodingAssignment::uniform(&unary, CodeSpec::Unary)?;
    println!("one-hot penalty terms: {}", f_ss(&ua, "u0", ValidityOptions { unary_one_hot: true })?.len());
    Ok(())
}
