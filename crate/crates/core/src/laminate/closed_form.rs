//! Lumped two-constituent unimorph formulas: one substrate directly under one
//! contiguous piezostack, no adhesive films. Every quantity is written out
//! from the substrate and piezostack parameters alone so it can be compared
//! against the general per-layer model.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LumpedUnimorph {
    /// Piezo modulus E_p (Pa).
    pub piezo_modulus: f64,
    /// Substrate modulus E_s (Pa).
    pub substrate_modulus: f64,
    /// Substrate thickness t_s (m).
    pub substrate_thickness: f64,
    /// Film thickness t_ℓ (m).
    pub layer_thickness: f64,
    pub layer_count: u32,
    /// Transverse coefficient d31 (m/V).
    pub d31: f64,
    pub width: f64,
    pub length: f64,
}

impl LumpedUnimorph {
    /// t_p = N·t_ℓ
    pub fn stack_thickness(&self) -> f64 {
        self.layer_count as f64 * self.layer_thickness
    }

    /// A_p = b·t_p
    pub fn piezo_area(&self) -> f64 {
        self.width * self.stack_thickness()
    }

    /// A_s = b·t_s
    pub fn substrate_area(&self) -> f64 {
        self.width * self.substrate_thickness
    }

    pub fn substrate_centroid(&self) -> f64 {
        self.substrate_thickness / 2.0
    }

    pub fn piezo_centroid(&self) -> f64 {
        self.substrate_thickness + self.stack_thickness() / 2.0
    }

    /// z_n = (E_s A_s z_s + E_p A_p z_p) / (E_s A_s + E_p A_p)
    pub fn neutral_axis(&self) -> f64 {
        let (es, ep) = (self.substrate_modulus, self.piezo_modulus);
        let (a_s, a_p) = (self.substrate_area(), self.piezo_area());
        (es * a_s * self.substrate_centroid() + ep * a_p * self.piezo_centroid())
            / (es * a_s + ep * a_p)
    }

    /// Lever arm z_p − z_n, formed from z_p − z_s = (t_s + t_p)/2 so that it
    /// does not cancel when the piezostack dominates the section.
    pub fn lever_arm(&self) -> f64 {
        let (es, ep) = (self.substrate_modulus, self.piezo_modulus);
        let (a_s, a_p) = (self.substrate_area(), self.piezo_area());
        es * a_s * (self.piezo_centroid() - self.substrate_centroid()) / (es * a_s + ep * a_p)
    }

    /// z_s − z_n
    fn substrate_arm(&self) -> f64 {
        let (es, ep) = (self.substrate_modulus, self.piezo_modulus);
        let (a_s, a_p) = (self.substrate_area(), self.piezo_area());
        -ep * a_p * (self.piezo_centroid() - self.substrate_centroid()) / (es * a_s + ep * a_p)
    }

    /// EI_eq = E_s (I_s + A_s (z_s − z_n)²) + E_p (I_p + A_p (z_p − z_n)²)
    pub fn flexural_stiffness(&self) -> f64 {
        let b = self.width;
        let ts = self.substrate_thickness;
        let tp = self.stack_thickness();
        let i_s = b * ts.powi(3) / 12.0;
        let i_p = b * tp.powi(3) / 12.0;
        self.substrate_modulus * (i_s + self.substrate_area() * self.substrate_arm().powi(2))
            + self.piezo_modulus * (i_p + self.piezo_area() * self.lever_arm().powi(2))
    }

    /// F = 3 E_p b N d31 V (z_p − z_n) / (2 L)
    ///
    /// The film thickness cancels between A_p = b·N·t_ℓ and ε* = d31·V/t_ℓ;
    /// it enters only through the lever arm z_p − z_n.
    pub fn blocked_force(&self, voltage: f64) -> f64 {
        3.0 * self.piezo_modulus
            * self.width
            * self.layer_count as f64
            * self.d31
            * voltage
            * self.lever_arm()
            / (2.0 * self.length)
    }

    /// δ = L² E_p b N d31 V (z_p − z_n) / (2 EI_eq)
    pub fn free_deflection(&self, voltage: f64) -> f64 {
        self.length.powi(2)
            * self.piezo_modulus
            * self.width
            * self.layer_count as f64
            * self.d31
            * voltage
            * self.lever_arm()
            / (2.0 * self.flexural_stiffness())
    }
}
