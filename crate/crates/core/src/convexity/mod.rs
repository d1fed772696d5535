//! Convexity tests: hyperplane intersections, certificates, projective
//! images and curves on S².

pub mod intersections;
pub mod projection;
pub mod sphere;

pub use intersections::{
    hyperplane_intersections, nonconvexity_certificate, verify_certificate, Certificate, CertificateOptions,
    Hyperplane, IntersectionOptions, IntersectionReport, Root, Verdict,
};
pub use projection::{
    assess_convexity, cell_certificate, central_projection, is_multiconvex, moment_wronskian, projective_image,
    wronskian, CellCertificate, ConvexityVerdict,
};
pub use sphere::{hemisphere_check, rotation_number, Hemisphere, HemisphereKind, SPHERE_SAMPLES};
