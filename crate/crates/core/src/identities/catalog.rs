use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Verified,
    ErratumCorrected,
    AmbiguousResolved,
    DerivedObservation,
    Unresolved,
}

impl Status {
    pub const ALL: [Status; 5] = [
        Status::Verified,
        Status::ErratumCorrected,
        Status::AmbiguousResolved,
        Status::DerivedObservation,
        Status::Unresolved,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::ErratumCorrected => "erratum-corrected",
            Status::AmbiguousResolved => "ambiguous-resolved",
            Status::DerivedObservation => "derived-observation",
            Status::Unresolved => "unresolved",
        }
    }
}

impl Serialize for Status {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

macro_rules! catalog {
    ($( $variant:ident => $name:literal, $status:ident, $tol:expr, $formula:literal, $notes:literal; )*) => {
        /// Every identity the harness can check, in canonical order.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum IdentityId { $( $variant, )* }

        impl IdentityId {
            pub const ALL: &'static [IdentityId] = &[ $( IdentityId::$variant, )* ];

            pub fn name(self) -> &'static str {
                match self { $( IdentityId::$variant => $name, )* }
            }

            /// Declared status; checks with printed-form evidence may refine it.
            pub fn status(self) -> Status {
                match self { $( IdentityId::$variant => Status::$status, )* }
            }

            pub fn tolerance(self) -> f64 {
                match self { $( IdentityId::$variant => $tol, )* }
            }

            /// The identity in plain notation; corrected forms are marked.
            pub fn formula(self) -> &'static str {
                match self { $( IdentityId::$variant => $formula, )* }
            }

            pub fn notes(self) -> &'static str {
                match self { $( IdentityId::$variant => $notes, )* }
            }
        }
    };
}

catalog! {
    FeG => "FE_G", Verified, 1e-10,
        "ln G(x+1) - ln G(x) = ln Γ(x)", "";
    IntegerValues => "INTEGER_VALUES", ErratumCorrected, 1e-12,
        "G(n+1) = Π_{k=1}^{n-1} k! = (n!)^n / (1^1 2^2 ... n^n)  [printed: 1^1 2^2...n^n/(n!)^n = 1^n 2^(n-1)...(n-1)^1]",
        "printed product is inverted; recursion oracle G(n) = Π_{k=1}^{n-2} k! used";
    Malmsten => "MALMSTEN", Verified, 1e-10,
        "ln Γ(x) = ∫ e^{-u}/u {(x-1) - (1-e^{-(x-1)u})/(1-e^{-u})} du", "";
    GIntegral => "G_INTEGRAL", Verified, 1e-8,
        "ln G(x) = ∫ e^{-u}/u {(x-1)(x-2)/2 - (x-1)/(1-e^{-u}) + (1-e^{-(x-1)u})/(1-e^{-u})^2} du", "";
    GWeierstrass => "G_WEIERSTRASS", Verified, 1e-10,
        "G(1+x) = (2π)^{x/2} e^{-x(x+1)/2 - γx²/2} Π_n (1+x/n)^n e^{-x+x²/(2n)}", "";
    GEulerLimit => "G_EULER_LIMIT", Verified, 1e-3,
        "G(x) = lim (n+1)^{(x-1)(x-2)/2} n!^{x-1} Π_{k=0}^{n-1} Γ(k+1)/Γ(k+x)",
        "";
    Duplication => "DUPLICATION", Verified, 1e-9,
        "G(2x) = G(1/2)^{-2} 2^{(x-1)(2x-1)} π^{-x} Γ(x) G(x)² G(x+1/2)²", "";
    Multiplication => "MULTIPLICATION", Verified, 1e-8,
        "G(nx) = n^{(nx-1)²/2} (2π)^{-(n-1)(nx-1)/2} Π_{j=1}^{n-1} [Γ(x+(j-1)/n)/Γ(j/n)]^{n-j} Π_{j=0}^{n-1} [G(x+j/n)/G((1+j)/n)]^n", "";
    Asymptotic => "ASYMPTOTIC", ErratumCorrected, 1e-10,
        "ln G(x+1) ~ ln(π^{1/6} G(1/2)^{2/3} / 2^{1/36}) + (x/2) ln 2π + (x²/2 - 1/12) ln x - 3x²/4 + Σ_{n≥1} B_{2n+2}/(4n(n+1)x^{2n})  [printed sum carries (-1)^n]",
        "with B_{2n} signed by x/(e^x-1) the factor (-1)^n must be dropped";
    IntLogGamma => "INT_LOG_GAMMA", Verified, 1e-8,
        "∫_0^a ln Γ(t) dt = -ln G(a) + (a-1) ln Γ(a) - a(a-1)/2 + (a/2) ln 2π", "";
    IntLogSin => "INT_LOG_SIN", Verified, 1e-8,
        "∫_0^x ln sin πt dt = x ln(sin πx / 2π) + ln(G(1+x)/G(1-x))", "";
    IntXCot => "INT_X_COT", Verified, 1e-8,
        "∫_0^x πt cot πt dt = x ln 2π + ln(G(1-x)/G(1+x))", "";
    RootsOfUnity => "ROOTS_OF_UNITY", Verified, 1e-8,
        "Π_{k<n} G(a - e^{2πik/n} x)/G(a) = Π_{m≥0} (1 - x^n/(a+m)^n)^{m+1}  (n ≥ 3; n ≤ 2 needs convergence factors)",
        "";
    GnFe => "GN_FE", Verified, 1e-6,
        "ln G_n(x+1) = ln G_{n-1}(x) + ln G_n(x), G_n(1) = 1", "";
    PnTelescope => "PN_TELESCOPE", Verified, 1e-12,
        "P_{n+1}(x+1) - P_{n+1}(x) = P_n(x)", "";
    G2Fe1 => "G2_FE1", Verified, 1e-7,
        "G(x+1;α) = Γ(x/α) G(x;α)", "";
    G2Fe2 => "G2_FE2", Verified, 1e-7,
        "G(x+α;α) = (2π)^{(α-1)/2} α^{-(2x-1)/2} Γ(x) G(x;α)", "";
    G2Representation => "G2_REPRESENTATION", ErratumCorrected, 1e-7,
        "ln G(x;α) = ∫ e^{-αu}/u {(x-1)(x-2α)/(2α) - (x-1)/(1-e^{-αu}) + (e^{-(1-α)u} - e^{-(x-α)u})/((1-e^{-u})(1-e^{-αu}))} du  [printed prefactor e^{-αu}/(1-e^{-u})]",
        "prefactor e^{-αu}/u restores both functional equations and the α = 1 reduction";
    G2Inversion => "G2_INVERSION", Verified, 1e-6,
        "G(x;1/α) = G(αx;α) G(α;α)^{-x} α^{(x-1)(αx-2)/2}", "";
    G2AlphaAlpha => "G2_ALPHA_ALPHA", Verified, 1e-7,
        "G(α;α) = α^{-1/2} (2π)^{(α-1)/2}", "";
    G2ThreeTerm => "G2_THREE_TERM", Verified, 1e-6,
        "three-term relation between G(·;α), G(·;1/(α+1)) and G(·;α/(α+1))", "";
    G2Rational => "G2_RATIONAL", Verified, 1e-6,
        "G(x;(m/n)α) as a double product of G(·;α) over j < m, k < n", "";
    G2EulerLim1 => "G2_EULER_LIM1", Verified, 1e-3,
        "first limit expression for G(x;α)", "";
    G2EulerLim2 => "G2_EULER_LIM2", ErratumCorrected, 2e-3,
        "second limit expression for G(x;α) with n!^{x-1}  [printed Γ(1/α+n)^{x-1}]",
        "printed factor diverges like n^{(α-1)(x-1)/α}";
    G2Lattice => "G2_LATTICE", ErratumCorrected, 1e-6,
        "G(x;α) = (x/α) e^{ax+bx²} Π' (1+x/w) e^{-x/w + x²/(2w²)}, w = m+nα; a = ∂ln G(1;α) - ψ(1)/α, b = (∂²ln G(1;α) - ψ'(1)/α²)/2  [printed: e^{x²/w²}, opposite signs in a, b]",
        "convergence factor needs the 1/2 and the constants carry the opposite sign";
    G2Alpha1Degeneration => "G2_ALPHA1_DEGENERATION", Verified, 1e-8,
        "G(x;1) = G(x)", "";
    Reflection => "REFLECTION", Unresolved, 1e-6,
        "G(1+x;α) G(-x;-α) = C·O(x), O(x) = Π_{k≥1} (1 - q^{2k} e^{2πix}), q = πiα as printed",
        "constant C tested under q = πiα and q = e^{πiα} over a sample of x";
    PhiClosed => "PHI_CLOSED", Verified, 1e-6,
        "φ(x) = d/dx ln G(x) = (x-1)(ψ(x)-1) + φ(1), φ(1) = -1/2 + (1/2) ln 2π", "";
    PhiSeries1 => "PHI_SERIES_1", Verified, 1e-10,
        "φ(1+x) = -1/2 + (1/2) ln 2π - x(1+γ) + Σ_{k≥1} x²/(k(x+k))", "";
    PhiSeries2 => "PHI_SERIES_2", ErratumCorrected, 1e-10,
        "φ(a+x) = φ(a) + xψ(a) + Σ_{j≥1} (-1)^{j-1} x(x-1)...(x-j) / (j(j+1)(a)_j)  [printed numerator x(x-1)...(x-j+1)]",
        "numerator needs the falling factorial of length j+1";
    LngPowerSeries => "LNG_POWER_SERIES", Verified, 1e-10,
        "ln G(x+a) = ln G(a) + xφ(a) + x²φ'(a)/2 + Σ_{j≥3} (-1)^{j+1} C_j x^j/j, C_j = Σ_k k/(a+k-1)^j", "";
    KinkelinFe => "KINKELIN_FE", Verified, 1e-10,
        "K(x+1) = x^x K(x), K(1) = 1", "";
    KinkelinDef => "KINKELIN_DEF", ErratumCorrected, 1e-10,
        "ln K(x) = ∫_0^x ln Γ(t) dt + x(x-1)/2 - (x/2) ln 2π  [printed + (x/2) ln 2π]",
        "K(1) = 1 forces the minus sign";
    GkRelation => "GK_RELATION", Verified, 1e-10,
        "G(x) K(x) = Γ(x)^{x-1}", "";
    KinkelinMult => "KINKELIN_MULT", Verified, 1e-9,
        "Kinkelin multiplication formula for K(nx) with ω̃", "";
    OmegaRoutes => "OMEGA_ROUTES", ErratumCorrected, 1e-8,
        "ln ω̃ = 2∫_0^1 ln K = 2(-1/24 + γ/3 + Σ (ζ(2λ+1)-1)/((2λ+1)(2λ+3))) = lim (2n/(n²-1)) (ln n/(12n) + Σ_{j<n} ln K(j/n))  [printed prelimit factor n/(n²-1)]",
        "printed prelimit converges to (1/2) ln ω̃";
    RaabeAnalog => "RAABE_ANALOG", AmbiguousResolved, 1e-8,
        "∫_x^{x+1} ln K(t) dt = (1/2) ln ω̃ + (x²/4)(2 ln x - 1)  [printed integrand K(t)]",
        "integrand read as ln K(t); the literal K(t) reading is reported";
    KAsymptotic => "K_ASYMPTOTIC", Verified, 1e-5,
        "ln K(n+1) ~ (1/2) ln ω̃ - n²/4 + 1/12 + ((n²+n)/2 + 1/12) ln n", "";
    GlaisherDef => "GLAISHER_DEF", Verified, 1e-9,
        "A = ω̃^{1/2} e^{1/12}", "";
    BernoulliDifference => "BERNOULLI_DIFFERENCE", Verified, 1e-10,
        "B_p(x+1) - B_p(x) = p x^{p-1}", "";
    BernoulliRaabe => "BERNOULLI_RAABE", ErratumCorrected, 1e-10,
        "Σ_{j<n} B_p(x + j/n) = n^{1-p} B_p(nx)  [printed j^{1-p}]",
        "factor must be n^{1-p}";
    GammaMult => "GAMMA_MULT", ErratumCorrected, 1e-10,
        "Π_{j=0}^{n-1} Γ(x + j/n) = (2π)^{(n-1)/2} n^{1/2-nx} Γ(nx)  [printed product up to j = n]",
        "product runs over j = 0..n-1";
    KnFe => "KN_FE", Verified, 1e-6,
        "K_n(x+1) = x^{x^n} K_n(x), K_n(1) = 1", "";
    KnConversion => "KN_CONVERSION", ErratumCorrected, 1e-10,
        "ln K_n(x) = Σ_{j=0}^n (-1)^j (Δ^j x^n) ln G_{j+1}(x+j)  [printed ln G_j(x+j)]",
        "index shifted to G_{j+1}(x+j); the printed G_j(x+j) fails at the integer anchors";
    S2Crossroute => "S2_CROSSROUTE", ErratumCorrected, 1e-6,
        "ln S₂(x) = ((ω₁+ω₂-2x)/(2ω₁)) ln 2π + ln G(x/ω₁;τ) - ln G(1+τ-x/ω₁;τ) = ∫_0^∞ [sinh((x-(ω₁+ω₂)/2)t)/(2 sinh(ω₁t/2) sinh(ω₂t/2)) - (2x-ω₁-ω₂)/(ω₁ω₂t)] dt/t",
        "G-ratio: spurious ω₂-power removed and 1-x read as 1-x/ω₁; integral: t inserted, second ω₁ read as ω₂, factor 2 in the denominator";
    S2Symmetry => "S2_SYMMETRY", DerivedObservation, 1e-10,
        "S₂(x;ω₁,ω₂) = S₂(x;ω₂,ω₁)", "integral route is manifestly symmetric";
    S2Inversion => "S2_INVERSION", DerivedObservation, 1e-6,
        "S₂(x) S₂(ω₁+ω₂-x) = 1", "observed numerically via the G-ratio route";
    S2Homogeneity => "S2_HOMOGENEITY", DerivedObservation, 1e-7,
        "S₂(λx;λω₁,λω₂) = S₂(x;ω₁,ω₂)", "observed numerically via the G-ratio route";
    S2Shift => "S2_SHIFT", DerivedObservation, 1e-5,
        "S₂(x+ω₁)/S₂(x) = 1/(2 sin(πx/ω₂))", "observed numerically via the G-ratio route";
}

impl IdentityId {
    pub fn from_name(s: &str) -> Option<IdentityId> {
        IdentityId::ALL.iter().copied().find(|id| id.name() == s)
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IdentityId::from_name(s.trim()).ok_or_else(|| format!("unknown identity `{s}`"))
    }
}

impl Serialize for IdentityId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_unique_and_parse() {
        let mut names: Vec<_> = IdentityId::ALL.iter().map(|i| i.name()).collect();
        for n in &names {
            assert_eq!(IdentityId::from_name(n).unwrap().name(), *n);
        }
        names.sort();
        names.dedup();
        assert_eq!(names.len(), IdentityId::ALL.len());
    }

    #[test]
    fn canonical_order_matches_declaration() {
        let mut sorted = IdentityId::ALL.to_vec();
        sorted.sort();
        assert_eq!(sorted, IdentityId::ALL);
    }
}
