//! Cone angles of the spherical polar and its unbending family.
//!
//! The spherical polar of a right-angled polyhedron is the piecewise
//! spherical dual sphere built from one right-angled triangle per vertex;
//! the cone point dual to a k-gon face has cone angle k·π/2 > 2π.  Unbending
//! a very good edge e by t ∈ (0, 1) replaces the dihedral angle π/2 at e
//! with θ_t = (1−t)·π/2 + t·π.  Faces disjoint from e or containing it keep
//! cone angle k·π/2; a face containing exactly one endpoint of e gets
//! (k−1)·π/2 + (π − θ_t), still above 2π because such faces are large.
//!
//! This is the checkable part (conditions (1)-(2)) of the polar
//! characterization; the closed-geodesic condition (3) is a by-hand case
//! analysis with no algorithm and is not implemented.

use std::f64::consts::PI;

use serde::Serialize;

use crate::circuits;
use crate::error::{RapError, Result};
use crate::polyhedron::{EdgeId, FaceId, Polyhedron};
use crate::reduction::{classify_edges, EdgeStatus};

/// Cone angle of one face's dual point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConeAngle {
    pub face: FaceId,
    pub face_size: usize,
    pub angle: f64,
    pub exceeds_2pi: bool,
}

/// Per-face cone angle report, a partial Rivin check (conditions (1)-(2)
/// only).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConeAngleReport {
    pub angles: Vec<ConeAngle>,
    pub all_exceed_2pi: bool,
    /// Set when a deformation was requested: (edge, t).
    pub deformation: Option<(EdgeId, f64)>,
}

/// Computes all cone angles of the polar, optionally unbending a very good
/// edge by parameter `t`.
pub fn cone_angles(
    p: &Polyhedron,
    deformed_edge: Option<EdgeId>,
    t: Option<f64>,
) -> Result<ConeAngleReport> {
    circuits::require_admissible(p)?;
    let deformation = match (deformed_edge, t) {
        (None, None) => None,
        (Some(e), Some(t)) => {
            p.edge(e)?;
            if !(t > 0.0 && t < 1.0) {
                return Err(RapError::TOutOfRange { t });
            }
            let classification = classify_edges(p)?;
            if classification.edges[e].status != EdgeStatus::VeryGood {
                return Err(RapError::NotVeryGood { edge: e });
            }
            Some((e, t))
        }
        (Some(_), None) => return Err(RapError::TOutOfRange { t: f64::NAN }),
        (None, Some(t)) => return Err(RapError::TOutOfRange { t }),
    };

    let mut angles = Vec::with_capacity(p.face_count());
    for f in 0..p.face_count() {
        let k = p.face_size(f) as f64;
        let angle = match deformation {
            None => k * PI / 2.0,
            Some((e, t)) => {
                let ed = p.edges()[e];
                let cyc = p.face(f)?;
                let has_a = cyc.contains(&ed.a);
                let has_b = cyc.contains(&ed.b);
                if has_a ^ has_b {
                    // Exactly one endpoint: one triangle at this cone point
                    // is the deformed one, met in its non-right angle.
                    let theta_t = (1.0 - t) * PI / 2.0 + t * PI;
                    (k - 1.0) * PI / 2.0 + (PI - theta_t)
                } else {
                    k * PI / 2.0
                }
            }
        };
        angles.push(ConeAngle {
            face: f,
            face_size: p.face_size(f),
            angle,
            exceeds_2pi: angle > 2.0 * PI,
        });
    }
    let all_exceed_2pi = angles.iter().all(|a| a.exceeds_2pi);
    if !all_exceed_2pi {
        return Err(RapError::Internal(
            "a cone angle failed to exceed 2 pi under the stated preconditions".into(),
        ));
    }
    Ok(ConeAngleReport {
        angles,
        all_exceed_2pi,
        deformation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compose::compose;
    use crate::lobell::build_lobell;

    #[test]
    fn undeformed_pentagon_angle() {
        let l5 = build_lobell(5).unwrap();
        let report = cone_angles(&l5, None, None).unwrap();
        for a in &report.angles {
            assert_eq!(a.face_size, 5);
            assert!((a.angle - 5.0 * PI / 2.0).abs() < 1e-15);
            assert!(a.exceeds_2pi);
        }
    }

    #[test]
    fn deformed_angles_on_a_very_good_edge() {
        // A composition of two L(6) along petals has very good edges.
        let l6 = build_lobell(6).unwrap();
        let (p, _) = compose(&l6, 1, &l6, 1, 0, false).unwrap();
        let cl = classify_edges(&p).unwrap();
        let vg: Vec<EdgeId> = cl.very_good().map(|i| i.edge).collect();
        assert!(!vg.is_empty(), "composition should have very good edges");
        let e = vg[0];
        let report = cone_angles(&p, Some(e), Some(0.5)).unwrap();
        assert!(report.all_exceed_2pi);
        // Faces with exactly one endpoint are large and shifted by
        // pi - theta_t = pi/4 at t = 1/2.
        let ed = p.edges()[e];
        for a in &report.angles {
            let cyc = p.face(a.face).unwrap();
            let ends = cyc.contains(&ed.a) as u8 + cyc.contains(&ed.b) as u8;
            let k = a.face_size as f64;
            let expect = if ends == 1 {
                (k - 1.0) * PI / 2.0 + PI / 4.0
            } else {
                k * PI / 2.0
            };
            assert!((a.angle - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn deformation_needs_very_good_edge() {
        let l5 = build_lobell(5).unwrap();
        assert!(matches!(
            cone_angles(&l5, Some(0), Some(0.5)),
            Err(RapError::NotVeryGood { edge: 0 })
        ));
    }

    #[test]
    fn t_must_be_inside_unit_interval() {
        let l6 = build_lobell(6).unwrap();
        let (p, _) = compose(&l6, 1, &l6, 1, 0, false).unwrap();
        let cl = classify_edges(&p).unwrap();
        let first_vg = cl.very_good().next().map(|i| i.edge);
        if let Some(e) = first_vg {
            assert!(matches!(
                cone_angles(&p, Some(e), Some(1.0)),
                Err(RapError::TOutOfRange { .. })
            ));
            assert!(matches!(
                cone_angles(&p, Some(e), Some(0.0)),
                Err(RapError::TOutOfRange { .. })
            ));
        }
    }

    #[test]
    fn angles_converge_to_undeformed_as_t_vanishes() {
        let l6 = build_lobell(6).unwrap();
        let (p, _) = compose(&l6, 1, &l6, 1, 0, false).unwrap();
        let cl = classify_edges(&p).unwrap();
        let e = cl.very_good().next().expect("very good edge").edge;
        let deformed = cone_angles(&p, Some(e), Some(1e-9)).unwrap();
        let plain = cone_angles(&p, None, None).unwrap();
        for (a, b) in deformed.angles.iter().zip(plain.angles.iter()) {
            assert!((a.angle - b.angle).abs() < 1e-8);
        }
    }

    #[test]
    fn cube_is_rejected() {
        let cube = crate::shapes::cube();
        assert!(matches!(
            cone_angles(&cube, None, None),
            Err(RapError::NotAdmissible { .. })
        ));
    }
}
