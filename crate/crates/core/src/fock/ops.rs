//! CAR operators on [`FockVector`]s.

use crate::linalg::{CVector, C64};
use crate::selfdual::{embed_k1, gamma_vec, BogoliubovOp};

use super::{FockVector, ModeSet};

fn jw_sign(s: &ModeSet, i: usize) -> f64 {
    if s.count_below(i) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `a_i*` on a single mode.
pub fn create_mode(i: usize, v: &FockVector) -> FockVector {
    let mut out = FockVector::zero();
    for (s, a) in v.iter() {
        if !s.contains(i) {
            let sign = jw_sign(s, i);
            let mut t = s.clone();
            t.insert(i);
            out.add_amp(t, a * sign);
        }
    }
    out.pruned()
}

/// `a_i` on a single mode.
pub fn annihilate_mode(i: usize, v: &FockVector) -> FockVector {
    let mut out = FockVector::zero();
    for (s, a) in v.iter() {
        if s.contains(i) {
            let sign = jw_sign(s, i);
            let mut t = s.clone();
            t.remove(i);
            out.add_amp(t, a * sign);
        }
    }
    out.pruned()
}

/// `a(f)*` for `f = Σ f_i f_i` in `K1`.
pub fn create(f: &CVector, v: &FockVector) -> FockVector {
    let mut out = FockVector::zero();
    for (i, &c) in f.iter().enumerate() {
        if c != C64::default() {
            out.add_assign_scaled(c, &create_mode(i, v));
        }
    }
    out.pruned()
}

/// `a(f)`, antilinear in `f`.
pub fn annihilate(f: &CVector, v: &FockVector) -> FockVector {
    let mut out = FockVector::zero();
    for (i, &c) in f.iter().enumerate() {
        if c != C64::default() {
            out.add_assign_scaled(c.conj(), &annihilate_mode(i, v));
        }
    }
    out.pruned()
}

/// `Θ = (-1)^N`.
pub fn parity(v: &FockVector) -> FockVector {
    FockVector::from_entries(v.iter().map(|(s, a)| {
        let sign = if s.len() % 2 == 0 { 1.0 } else { -1.0 };
        (s.clone(), a * sign)
    }))
}

/// `π(B(k)) = a(P1 k)* + a(P1 Γ k)` for a mode-basis vector `k` in `K`.
pub fn field(k: &CVector, v: &FockVector) -> FockVector {
    let mut out = FockVector::zero();
    for (j, &c) in k.iter().enumerate() {
        if c == C64::default() {
            continue;
        }
        let term = if j % 2 == 0 {
            create_mode(j / 2, v)
        } else {
            annihilate_mode(j / 2, v)
        };
        out.add_assign_scaled(c, &term);
    }
    out.pruned()
}

/// `ψ(k) = π(B(k)) Θ`.
pub fn psi(k: &CVector, v: &FockVector) -> FockVector {
    field(k, &parity(v))
}

/// `ψ(k)* = Θ π(B(Γk))`.
pub fn psi_adjoint(k: &CVector, v: &FockVector) -> FockVector {
    parity(&field(&gamma_vec(k), v))
}

/// `a_V(f) = a(V11 f) + a(V12 Γ f)* = π(B(V Γ f))`.
pub fn transformed_annihilate(vop: &BogoliubovOp, f: &CVector, v: &FockVector) -> FockVector {
    let k = vop.op().apply(&gamma_vec(&embed_k1(f)));
    field(&k, v)
}

/// `a_V(f)* = π(B(V f))`.
pub fn transformed_create(vop: &BogoliubovOp, f: &CVector, v: &FockVector) -> FockVector {
    let k = vop.op().apply(&embed_k1(f));
    field(&k, v)
}

/// `π(ρ_V(B(k))) = π(B(V k))`.
pub fn transformed_field(vop: &BogoliubovOp, k: &CVector, v: &FockVector) -> FockVector {
    field(&vop.op().apply(k), v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    #[test]
    fn pauli_and_vacuum() {
        let om = FockVector::vacuum();
        assert!(annihilate_mode(0, &om).is_empty());
        assert!(create_mode(0, &create_mode(0, &om)).is_empty());
        assert_eq!(parity(&om), om);
    }

    #[test]
    fn ordering_sign() {
        // a_1* a_0* Ω = - a_0* a_1* Ω = -|0,1>
        let v = create_mode(1, &create_mode(0, &FockVector::vacuum()));
        assert_eq!(v, FockVector::basis(&[0, 1]).scale(c(-1.0, 0.0)));
    }

    #[test]
    fn car_on_sample() {
        let f = CVector::from_vec(vec![c(0.3, 0.1), c(-0.2, 0.5), c(0.0, 1.0)]);
        let g = CVector::from_vec(vec![c(1.0, 0.0), c(0.4, -0.2), c(0.1, 0.1)]);
        let v = FockVector::basis(&[1])
            .add(&FockVector::basis(&[0, 2]).scale(c(0.0, 2.0)))
            .add(&FockVector::vacuum());
        let lhs = annihilate(&f, &create(&g, &v)).add(&create(&g, &annihilate(&f, &v)));
        let rhs = v.scale(f.dotc(&g));
        assert!(lhs.distance(&rhs) < 1e-14);
    }
}
