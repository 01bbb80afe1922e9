use std::cmp::Ordering;

use colourful_core::gale::{balanced_coloured_split, colour_balanced, gale_transform, radon_via_gale, OriginHyperplane};
use colourful_core::linalg::{hulls_intersection, HullIntersection};
use colourful_core::model::{decode_partition, verify_certificate, Configuration, EqualCoefficientCertificate, RemovalSet};
use colourful_core::tverberg::{count_lower_bound, enumerate_partitions, solve_equal_coefficients, solve_radon, solve_tolerant};
use colourful_core::{Error, Rational};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::CliError;
use crate::format::{
    from_q, parse_representation, representation_doc, to_q, CertificateDoc, Command, FamilyDoc, InstanceFile,
    IntersectionDoc, PartitionDoc, ResultFile, SplitDoc, TolerantEntryDoc,
};

fn intersection_doc(h: &HullIntersection) -> IntersectionDoc {
    IntersectionDoc { point: to_q(&h.point), weights: h.weights.iter().map(|w| to_q(w)).collect() }
}

fn tolerance(instance: &InstanceFile) -> Result<usize, CliError> {
    instance.r.ok_or_else(|| CliError::usage("tolerant instance needs \"r\""))
}

/// Runs `command` on the instance and checks the result with [`verify`]
/// before returning it.
pub fn solve(command: Command, instance: &InstanceFile) -> Result<ResultFile, CliError> {
    let mut out = ResultFile::new(command, instance.hash());
    match command {
        Command::Tverberg | Command::Radon => {
            let config = instance.configuration()?;
            let (rep, cert) =
                if command == Command::Radon { solve_radon(&config)? } else { solve_equal_coefficients(&config)? };
            out.representation = Some(representation_doc(&rep));
            out.certificate = Some(CertificateDoc::from(&cert));
        }
        Command::Tolerant => {
            if instance.d < 2 {
                return Err(Error::RequiresDimensionTwo.into());
            }
            let r = tolerance(instance)?;
            let config = instance.configuration()?;
            let (rep, family) = solve_tolerant(&config, r)?;
            out.representation = Some(representation_doc(&rep));
            out.family = Some(FamilyDoc {
                r,
                entries: family
                    .entries
                    .iter()
                    .map(|e| TolerantEntryDoc {
                        removed: e.removed.classes().iter().map(|j| j + 1).collect(),
                        certificate: CertificateDoc::from(&e.certificate),
                    })
                    .collect(),
                shared: family.shared.as_deref().map(to_q),
            });
        }
        Command::RadonGale => {
            let config = instance.configuration()?;
            let rep = radon_via_gale(&config)?;
            let parts = decode_partition(&config, &rep)?;
            let meet = hulls_intersection(&parts)?
                .ok_or_else(|| CliError::verification("Gale partition hulls do not intersect"))?;
            out.representation = Some(representation_doc(&rep));
            out.intersection = Some(intersection_doc(&meet));
        }
        Command::Balanced => {
            let (points, colours) = instance.coloured_points()?;
            let split = balanced_coloured_split(&points, &colours)?;
            out.split = Some(SplitDoc {
                a: split.a.iter().map(|i| i + 1).collect(),
                b: split.b.iter().map(|i| i + 1).collect(),
                normal: to_q(&split.hyperplane.normal),
                intersection: intersection_doc(&split.intersection),
            });
        }
        Command::Enumerate => return Err(CliError::usage("use the enumerate subcommand")),
    }
    verify(instance, &out).map_err(|e| CliError::verification(format!("solver output failed its own check: {e}")))?;
    Ok(out)
}

/// All canonical equal-coefficient partitions with the counting bound.
pub fn enumerate(instance: &InstanceFile, budget: u128) -> Result<ResultFile, CliError> {
    let config = instance.configuration()?;
    let k = config.points_per_class();
    let found = enumerate_partitions(&config, budget)?;
    let bound = count_lower_bound(k, config.dimension());
    let mut out = ResultFile::new(Command::Enumerate, instance.hash());
    out.count = Some(found.len());
    out.meets_bound = Some(meets(&bound, found.len()));
    out.bound = Some(bound.to_string());
    out.partitions = Some(
        found
            .iter()
            .map(|(rep, cert)| PartitionDoc { representation: representation_doc(rep), certificate: cert.into() })
            .collect(),
    );
    Ok(out)
}

fn meets(bound: &impl ToPrimitive, count: usize) -> bool {
    // A bound too large for u64 is certainly above any count we can hold.
    bound.to_u64().is_some_and(|b| b <= count as u64)
}

/// Collected failures of a verification run.
#[derive(Default)]
struct Failures(Vec<String>);

impl Failures {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.0.push(what());
        }
    }
}

fn missing(field: &str) -> String {
    format!("result has no \"{field}\"")
}

/// Re-checks every claim in `result` against `instance` using only the
/// exact verification routines, never the solvers.
pub fn verify(instance: &InstanceFile, result: &ResultFile) -> Result<(), CliError> {
    let mut failures = Failures::default();
    let hash = instance.hash();
    failures.check(result.instance_hash == hash, || {
        format!("instance hash mismatch: result is for {}, instance is {hash}", result.instance_hash)
    });
    match result.command {
        Command::Tverberg | Command::Radon => {
            let config = instance.configuration()?;
            match (&result.representation, &result.certificate) {
                (Some(rows), Some(cert)) => {
                    check_certificate(&mut failures, &config, rows, &cert.to_certificate(), None, "certificate")
                }
                _ => failures.0.push(missing("representation\" or \"certificate")),
            }
        }
        Command::Tolerant => {
            let config = instance.configuration()?;
            match (&result.representation, &result.family) {
                (Some(rows), Some(family)) => check_family(&mut failures, &config, instance, rows, family),
                _ => failures.0.push(missing("representation\" or \"family")),
            }
        }
        Command::RadonGale => {
            let config = instance.configuration()?;
            match (&result.representation, &result.intersection) {
                (Some(rows), Some(meet)) => match parse_representation(rows, config.points_per_class())
                    .and_then(|rep| decode_partition(&config, &rep).map_err(|e| e.to_string()))
                {
                    Ok(parts) => failures.check(
                        parts.len() == 2 && intersection(meet).verify(&parts),
                        || "parts do not meet at the claimed point".into(),
                    ),
                    Err(e) => failures.0.push(format!("representation: {e}")),
                },
                _ => failures.0.push(missing("representation\" or \"intersection")),
            }
        }
        Command::Balanced => {
            let (points, colours) = instance.coloured_points()?;
            match &result.split {
                Some(split) => check_split(&mut failures, &points, &colours, split),
                None => failures.0.push(missing("split")),
            }
        }
        Command::Enumerate => {
            let config = instance.configuration()?;
            check_enumeration(&mut failures, &config, result);
        }
    }
    if failures.0.is_empty() {
        Ok(())
    } else {
        Err(CliError::verification(failures.0.join("\n")))
    }
}

fn intersection(doc: &IntersectionDoc) -> HullIntersection {
    HullIntersection { point: from_q(&doc.point), weights: doc.weights.iter().map(|w| from_q(w)).collect() }
}

fn check_certificate(
    failures: &mut Failures,
    config: &Configuration,
    rows: &[Vec<usize>],
    cert: &EqualCoefficientCertificate,
    removed: Option<&RemovalSet>,
    label: &str,
) {
    let outcome = parse_representation(rows, config.points_per_class())
        .and_then(|rep| verify_certificate(config, &rep, cert, removed).map_err(|e| e.to_string()));
    match outcome {
        Ok(true) => {}
        Ok(false) => failures.0.push(format!("{label}: coefficients do not give a common point")),
        Err(e) => failures.0.push(format!("{label}: {e}")),
    }
}

fn check_family(failures: &mut Failures, config: &Configuration, instance: &InstanceFile, rows: &[Vec<usize>], family: &FamilyDoc) {
    if let Some(r) = instance.r {
        failures.check(family.r == r, || format!("family tolerates {} removals, instance asks for {r}", family.r));
    }
    let n = config.class_count();
    let expected = binomial(n, family.r);
    failures.check(family.entries.len() as u128 == expected, || {
        format!("{} certificates for {expected} removal sets", family.entries.len())
    });
    let mut seen = std::collections::BTreeSet::new();
    for entry in &family.entries {
        let label = format!("removal {:?}", entry.removed);
        let removed = match entry.removed.iter().map(|j| j.checked_sub(1).filter(|&j| j < n)).collect::<Option<Vec<_>>>() {
            Some(r) => r,
            None => {
                failures.0.push(format!("{label}: class index out of range"));
                continue;
            }
        };
        let Ok(set) = RemovalSet::new(removed) else {
            failures.0.push(format!("{label}: repeated class"));
            continue;
        };
        failures.check(set.len() == family.r, || format!("{label}: wrong size"));
        failures.check(seen.insert(set.classes().to_vec()), || format!("{label}: listed twice"));
        check_certificate(failures, config, rows, &entry.certificate.to_certificate(), Some(&set), &label);

        if let Some(shared) = &family.shared {
            let shared = from_q(shared);
            if shared.len() != n {
                failures.0.push(format!("shared weights have length {}, expected {n}", shared.len()));
                continue;
            }
            let restricted: Vec<Rational> = set.survivors(n).iter().map(|&j| shared[j].clone()).collect();
            let total: Rational = restricted.iter().sum();
            if total.is_zero() || restricted.iter().any(Signed::is_negative) {
                failures.0.push(format!("{label}: shared weights vanish or go negative on the survivors"));
                continue;
            }
            let alpha: Vec<Rational> = restricted.iter().map(|x| x / &total).collect();
            // The common point differs between removals, so rebuild it from part 1.
            let outcome = parse_representation(rows, config.points_per_class()).ok().map(|rep| {
                let cert = EqualCoefficientCertificate::from_coefficients(config, &rep, &set.survivors(n), alpha);
                verify_certificate(config, &rep, &cert, Some(&set))
            });
            failures.check(matches!(outcome, Some(Ok(true))), || format!("{label}: shared weights do not work"));
        }
    }
}

fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

fn check_split(failures: &mut Failures, points: &[Vec<Rational>], colours: &[usize], split: &SplitDoc) {
    let n = points.len();
    let zero_based = |s: &[usize]| s.iter().map(|i| i.checked_sub(1).filter(|&i| i < n)).collect::<Option<Vec<_>>>();
    let (Some(a), Some(b)) = (zero_based(&split.a), zero_based(&split.b)) else {
        failures.0.push("split index out of range".into());
        return;
    };
    let mut all: Vec<usize> = a.iter().chain(&b).copied().collect();
    all.sort_unstable();
    all.dedup();
    failures.check(all.len() == a.len() + b.len(), || "A and B are not disjoint".into());
    failures.check(!a.is_empty() && !b.is_empty(), || "A or B is empty".into());
    failures.check(colour_balanced(colours, &a, &b), || "colour counts of A and B differ".into());
    let pick = |s: &[usize]| s.iter().map(|&i| points[i].clone()).collect::<Vec<_>>();
    failures.check(intersection(&split.intersection).verify(&[pick(&a), pick(&b)]), || {
        "hulls of A and B do not meet at the claimed point".into()
    });

    // The cut must bisect every colour of the Gale dual, and points strictly
    // off the cut must sit on their own side.
    match (gale_transform(points), OriginHyperplane::new(from_q(&split.normal))) {
        (Ok(gale), Ok(h)) if h.normal.len() == gale.dual_dimension() => {
            let mut groups: std::collections::BTreeMap<usize, Vec<Vec<Rational>>> = Default::default();
            for (i, &c) in colours.iter().enumerate() {
                groups.entry(c).or_default().push(gale.dual[i].clone());
            }
            let classes: Vec<_> = groups.into_values().collect();
            failures.check(h.bisects(&classes), || "cut does not bisect every colour of the dual".into());
            let sides_ok = a.iter().all(|&i| h.side(&gale.dual[i]) != Ordering::Less)
                && b.iter().all(|&i| h.side(&gale.dual[i]) != Ordering::Greater);
            failures.check(sides_ok, || "a point lies on the wrong side of the cut".into());
        }
        (Err(e), _) => failures.0.push(format!("Gale dual: {e}")),
        _ => failures.0.push("cut normal is zero or has the wrong length".into()),
    }
}

fn check_enumeration(failures: &mut Failures, config: &Configuration, result: &ResultFile) {
    let Some(partitions) = &result.partitions else {
        failures.0.push(missing("partitions"));
        return;
    };
    failures.check(result.count == Some(partitions.len()), || "count does not match the partition list".into());
    let bound = count_lower_bound(config.points_per_class(), config.dimension());
    failures.check(result.bound.as_deref() == Some(bound.to_string().as_str()), || format!("bound should be {bound}"));
    failures.check(result.meets_bound == Some(meets(&bound, partitions.len())), || "meets_bound is wrong".into());
    let mut seen = std::collections::BTreeSet::new();
    for (i, p) in partitions.iter().enumerate() {
        let label = format!("partition {}", i + 1);
        failures.check(p.representation.first().is_some_and(|s| s.iter().enumerate().all(|(i, &v)| v == i + 1)), || {
            format!("{label}: not canonical")
        });
        failures.check(seen.insert(p.representation.clone()), || format!("{label}: duplicate"));
        check_certificate(failures, config, &p.representation, &p.certificate.to_certificate(), None, &label);
    }
}
