use crate::error::{Error, Result};
use crate::maps::{Handle, MorphismRef};

use super::quantum::HopfData;

/// Torsor structure `μ: T -> T ⊗ T^op ⊗ T` with its endomorphism `θ`.
#[derive(Clone, Debug)]
pub struct TorsorData {
    pub algebra: Handle,
    pub mu: MorphismRef,
    pub theta: MorphismRef,
}

/// Hopf-Galois system `(A, B, T, Z)` together with the mirrored structure
/// needed for the complete-system checks.
///
/// Coactions are named by side: `t_left: T -> A ⊗ T`,
/// `t_right: T -> T ⊗ B`, `z_left: Z -> B ⊗ Z`, `z_right: Z -> Z ⊗ A`.
#[derive(Clone, Debug)]
pub struct GaloisBundle {
    pub name: String,
    pub a: HopfData,
    pub b: HopfData,
    pub t: Handle,
    pub z: Handle,
    pub t_left: MorphismRef,
    pub t_right: MorphismRef,
    pub z_left: MorphismRef,
    pub z_right: MorphismRef,
    /// `γ: A -> T ⊗ Z`
    pub gamma: MorphismRef,
    /// `δ: B -> Z ⊗ T`
    pub delta: MorphismRef,
    /// `S_T: T -> Z^op`
    pub s_t: MorphismRef,
    /// `S_Z: Z -> T^op`
    pub s_z: MorphismRef,
    pub torsor: Option<TorsorData>,
}

impl GaloisBundle {
    /// Every map of the bundle with its role label.
    pub fn maps(&self) -> Vec<(&'static str, &MorphismRef)> {
        let mut out = vec![
            ("Δ_A", &self.a.coproduct),
            ("S_A", &self.a.antipode),
            ("ε_A", &self.a.counit),
            ("Δ_B", &self.b.coproduct),
            ("S_B", &self.b.antipode),
            ("ε_B", &self.b.counit),
            ("t_left", &self.t_left),
            ("t_right", &self.t_right),
            ("z_left", &self.z_left),
            ("z_right", &self.z_right),
            ("γ", &self.gamma),
            ("δ", &self.delta),
            ("S_T", &self.s_t),
            ("S_Z", &self.s_z),
        ];
        if let Some(tor) = &self.torsor {
            out.push(("μ", &tor.mu));
            out.push(("θ", &tor.theta));
        }
        out
    }

    /// Copy of the bundle with the map labelled `role` replaced by `m`.
    pub fn replace(&self, role: &str, m: MorphismRef) -> Result<GaloisBundle> {
        let mut b = self.clone();
        let slot = match role {
            "Δ_A" => &mut b.a.coproduct,
            "S_A" => &mut b.a.antipode,
            "ε_A" => &mut b.a.counit,
            "Δ_B" => &mut b.b.coproduct,
            "S_B" => &mut b.b.antipode,
            "ε_B" => &mut b.b.counit,
            "t_left" => &mut b.t_left,
            "t_right" => &mut b.t_right,
            "z_left" => &mut b.z_left,
            "z_right" => &mut b.z_right,
            "γ" => &mut b.gamma,
            "δ" => &mut b.delta,
            "S_T" => &mut b.s_t,
            "S_Z" => &mut b.s_z,
            "μ" | "θ" => match b.torsor.as_mut() {
                Some(tor) if role == "μ" => &mut tor.mu,
                Some(tor) => &mut tor.theta,
                None => {
                    return Err(Error::Validation(format!(
                        "bundle {} has no torsor",
                        self.name
                    )))
                }
            },
            _ => return Err(Error::Validation(format!("unknown role {role}"))),
        };
        if slot.source() != m.source() || slot.target() != m.target() {
            return Err(Error::SignatureMismatch(format!(
                "replacement for {role} has another signature"
            )));
        }
        *slot = m;
        Ok(b)
    }
}
