use std::fmt::Write;

use bumac::binary::{find_representation, is_binary_tutte, whitney_violation};
use bumac::extremal::{certify, round_to_matroid, ExtremalError};
use bumac::format::{CertificateFile, ConcentrationFile, MatroidFile};
use bumac::polymatroid::check_polymatroid;
use bumac::quasi::{check_pinsker_concentration, near_determinism_mass, quasi_integer_classify};
use bumac::recursion::{bridge_i_to_j, bridge_j_to_i};
use bumac::{Channel, F2Matrix, Matroid, Subset};
use serde::Serialize;

use crate::error::{CliError, Kind};

/// Fixed-point with at most 12 decimals, trailing zeros trimmed.
pub fn number(v: f64) -> String {
    let s = format!("{v:.12}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("report serializes") + "\n"
}

fn matrix_text(a: &F2Matrix) -> String {
    if a.num_rows() == 0 {
        "(rank 0)".to_string()
    } else {
        a.to_text()
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[derive(Serialize)]
struct UmifJson {
    m: usize,
    subsets: Vec<String>,
    values: Vec<f64>,
    polymatroid: bool,
    polymatroid_violation: Option<String>,
    matroid: Option<MatroidFile>,
    matroid_verdict: String,
    residual_max: f64,
    worst_subset: String,
    binary: Option<bool>,
    matrix: Option<String>,
}

pub fn umif(w: &Channel, tol: f64, json: bool) -> Result<String, CliError> {
    let m = w.users();
    let f = w.umif()?;
    let violation = check_polymatroid(&f, tol).err().map(|v| v.to_string());
    let (matroid, verdict, residual, worst) = match round_to_matroid(f.clone(), tol) {
        Ok(r) => {
            let (worst, residual) = r.worst;
            let verdict = match &r.matroid {
                Some(mat) => mat.describe(),
                None => format!("no (residual {} at {})", number(residual), worst.render(m)),
            };
            (r.matroid, verdict, residual, worst)
        }
        Err(ExtremalError::AxiomViolation(v)) => (None, format!("no ({v})"), f64::NAN, Subset::EMPTY),
        Err(e) => return Err(e.into()),
    };
    let representation = matroid.as_ref().map(find_representation);
    if json {
        let out = UmifJson {
            m,
            subsets: Subset::all(m).map(|s| s.render(m)).collect(),
            values: f.values().to_vec(),
            polymatroid: violation.is_none(),
            polymatroid_violation: violation,
            matroid: matroid.as_ref().map(MatroidFile::from_matroid),
            matroid_verdict: verdict,
            residual_max: residual,
            worst_subset: worst.render(m),
            binary: representation.as_ref().map(Option::is_some),
            matrix: representation.as_ref().and_then(|r| r.as_ref().map(|r| r.matrix.to_text())),
        };
        return Ok(to_json(&out));
    }
    let mut out = String::new();
    for (s, v) in f.iter() {
        writeln!(out, "{}\t{}", s.render(m), number(v)).unwrap();
    }
    if m == 0 {
        return Ok(out);
    }
    match &violation {
        None => writeln!(out, "polymatroid\tyes").unwrap(),
        Some(v) => writeln!(out, "polymatroid\tno ({v})").unwrap(),
    }
    writeln!(out, "matroid\t{verdict}").unwrap();
    if let Some(rep) = &representation {
        writeln!(out, "binary\t{}", yes_no(rep.is_some())).unwrap();
        if let Some(rep) = rep {
            writeln!(out, "matrix\t{}", matrix_text(&rep.matrix)).unwrap();
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct CheckJson {
    valid: bool,
    name: String,
    binary_tutte: bool,
    binary_whitney: bool,
    whitney_witness: Option<[String; 2]>,
}

pub fn check(matroid: &Matroid, json: bool) -> Result<String, CliError> {
    let m = matroid.ground_size();
    let tutte = is_binary_tutte(matroid)?;
    let witness = whitney_violation(matroid);
    let whitney = witness.is_none();
    if json {
        return Ok(to_json(&CheckJson {
            valid: true,
            name: matroid.describe(),
            binary_tutte: tutte,
            binary_whitney: whitney,
            whitney_witness: witness.map(|(a, b)| [a.render(m), b.render(m)]),
        }));
    }
    Ok(format!(
        "valid matroid; binary: {} (Tutte), {} (Whitney)\n",
        yes_no(tutte),
        yes_no(whitney)
    ))
}

#[derive(Serialize)]
struct MinorJson {
    found: bool,
    restrict: Option<String>,
    contract: Option<String>,
}

pub fn minor(matroid: &Matroid, target: &Matroid, json: bool) -> Result<String, CliError> {
    let m = matroid.ground_size();
    let found = matroid.find_minor(target)?;
    if json {
        return Ok(to_json(&MinorJson {
            found: found.is_some(),
            restrict: found.map(|(r, _)| r.render(m)),
            contract: found.map(|(_, c)| c.render(m)),
        }));
    }
    Ok(match found {
        Some((r, c)) => format!("restrict {} contract {}\n", r.render(m), c.render(m)),
        None => "none\n".to_string(),
    })
}

#[derive(Serialize)]
struct RepresentJson {
    binary: bool,
    matrix: Option<String>,
    basis: Option<Vec<usize>>,
}

pub fn represent(matroid: &Matroid, json: bool) -> Result<String, CliError> {
    let rep = find_representation(matroid);
    if json {
        return Ok(to_json(&RepresentJson {
            binary: rep.is_some(),
            matrix: rep.as_ref().map(|r| r.matrix.to_text()),
            basis: rep.as_ref().map(|r| r.basis.iter().map(|e| e + 1).collect()),
        }));
    }
    Ok(match rep {
        Some(r) => matrix_text(&r.matrix) + "\n",
        None => "not binary\n".to_string(),
    })
}

pub fn recover(w: &Channel, tol: f64) -> Result<String, CliError> {
    let cert = certify(w, tol)?;
    Ok(to_json(&CertificateFile::from_certificate(&cert)))
}

#[derive(Serialize)]
struct FormJson {
    subset: String,
    value: f64,
    bit: bool,
    distance: f64,
}

#[derive(Serialize)]
struct UserJson {
    user: usize,
    mutual_information: f64,
    equivocation: f64,
    pinsker: Option<ConcentrationFile>,
    near_determinism_mass: Option<f64>,
}

#[derive(Serialize)]
struct QuasiJson {
    epsilon: f64,
    matroid: MatroidFile,
    name: String,
    delta_max: f64,
    worst_subset: String,
    forms: Vec<FormJson>,
    form_distance_max: f64,
    forms_match_matroid: bool,
    users: Vec<UserJson>,
}

pub fn quasi(w: &Channel, eps: f64, json: bool) -> Result<String, CliError> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(CliError::new(Kind::Parse, format!("--eps must be positive, got {eps}")));
    }
    let m = w.users();
    let report = quasi_integer_classify(w, eps)?;
    let mut users = Vec::with_capacity(m);
    for user in 0..m {
        let j = w.single_user_joint(user)?;
        let mutual_information = j.mutual_information();
        let equivocation = j.conditional_entropy_x_given_y();
        let pinsker = if mutual_information < eps {
            Some(ConcentrationFile::from(&check_pinsker_concentration(&j, eps)?))
        } else {
            None
        };
        let near = if equivocation < eps { Some(near_determinism_mass(&j, eps)?) } else { None };
        users.push(UserJson {
            user: user + 1,
            mutual_information,
            equivocation,
            pinsker,
            near_determinism_mass: near,
        });
    }
    let forms: Vec<FormJson> = report
        .forms
        .iter()
        .map(|f| FormJson { subset: f.subset.render(m), value: f.value, bit: f.bit, distance: f.distance })
        .collect();
    if json {
        return Ok(to_json(&QuasiJson {
            epsilon: eps,
            matroid: MatroidFile::from_matroid(&report.matroid),
            name: report.matroid.describe(),
            delta_max: report.delta_max,
            worst_subset: report.worst_subset.render(m),
            forms,
            form_distance_max: report.form_distance_max,
            forms_match_matroid: report.forms_match_matroid,
            users,
        }));
    }
    let mut out = String::new();
    writeln!(out, "matroid\t{}", report.matroid.describe()).unwrap();
    writeln!(out, "delta_max\t{}", number(report.delta_max)).unwrap();
    writeln!(out, "worst_subset\t{}", report.worst_subset.render(m)).unwrap();
    writeln!(out, "form\tvalue\tbit").unwrap();
    for f in &forms {
        writeln!(out, "{}\t{}\t{}", f.subset, number(f.value), f.bit as u8).unwrap();
    }
    writeln!(out, "forms_match_matroid\t{}", yes_no(report.forms_match_matroid)).unwrap();
    let pass = |b: bool| if b { "pass" } else { "fail" };
    for u in &users {
        if let Some(p) = &u.pinsker {
            writeln!(
                out,
                "user {}\tpinsker\tI {}\tstated a {} mass {} bound {} {}\tderived a {} mass {} bound {} {}",
                u.user,
                number(p.mutual_information),
                number(p.threshold),
                number(p.mass),
                number(p.bound_stated),
                pass(p.pass_stated),
                number(p.threshold_derived),
                number(p.mass_derived),
                number(p.bound_derived),
                pass(p.pass_derived),
            )
            .unwrap();
        }
        if let Some(mass) = u.near_determinism_mass {
            writeln!(out, "user {}\tnear-determinism\th {}\tmass {}", u.user, number(u.equivocation), number(mass)).unwrap();
        }
        if u.pinsker.is_none() && u.near_determinism_mass.is_none() {
            writeln!(out, "user {}\tno premise\tI {}\th {}", u.user, number(u.mutual_information), number(u.equivocation))
                .unwrap();
        }
    }
    Ok(out)
}

fn parse_triple(text: &str) -> Result<[i64; 3], CliError> {
    let bad = || CliError::new(Kind::Parse, format!("{text:?} is not three comma-separated integers"));
    let parts: Vec<i64> = text
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    parts.try_into().map_err(|_| bad())
}

#[derive(Serialize)]
struct BridgeJson {
    i: [u8; 3],
    j: [u8; 3],
}

pub fn bridge(text: &str, from_i: bool, json: bool) -> Result<String, CliError> {
    let values = parse_triple(text)?;
    let (i, j) = if from_i {
        let j = bridge_i_to_j(values)?;
        (j.to_i(), j)
    } else {
        let i = bridge_j_to_i(values)?;
        (i, i.to_j())
    };
    if json {
        return Ok(to_json(&BridgeJson { i: i.values(), j: j.values() }));
    }
    Ok(if from_i { format!("{j}\n") } else { format!("{i}\n") })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_are_trimmed() {
        assert_eq!(number(1.0), "1");
        assert_eq!(number(0.5), "0.5");
        assert_eq!(number(-1e-15), "0");
        assert_eq!(number(1.0 / 3.0), "0.333333333333");
    }

    #[test]
    fn triples() {
        assert_eq!(parse_triple("1, 1,2").unwrap(), [1, 1, 2]);
        assert!(parse_triple("1,1").is_err());
        assert!(parse_triple("a,b,c").is_err());
    }
}
