// Runs every cargo example as a test so they stay in sync with the library.

#[path = "../examples/group_cohomology.rs"]
mod group_cohomology;
#[path = "../examples/hecke_eigenforms.rs"]
mod hecke_eigenforms;
#[path = "../examples/line_bundles.rs"]
mod line_bundles;
#[path = "../examples/parabolic_bundles.rs"]
mod parabolic_bundles;
#[path = "../examples/period_domains.rs"]
mod period_domains;
#[path = "../examples/petersson_products.rs"]
mod petersson_products;
#[path = "../examples/twisted_forms.rs"]
mod twisted_forms;
#[path = "../examples/weight_filtrations.rs"]
mod weight_filtrations;
#[path = "../examples/weyl_groups.rs"]
mod weyl_groups;

#[test]
fn weyl_groups_runs() {
    weyl_groups::run();
}

#[test]
fn line_bundles_runs() {
    line_bundles::run();
}

#[test]
fn period_domains_runs() {
    period_domains::run();
}

#[test]
fn weight_filtrations_runs() {
    weight_filtrations::run();
}

#[test]
fn hecke_eigenforms_runs() {
    hecke_eigenforms::run();
}

#[test]
fn petersson_products_runs() {
    petersson_products::run();
}

#[test]
fn parabolic_bundles_runs() {
    parabolic_bundles::run();
}

#[test]
fn group_cohomology_runs() {
    group_cohomology::run();
}

#[test]
fn twisted_forms_runs() {
    twisted_forms::run();
}
