use cone_morse::morse_model::{
    builtin, from_toml_str, load, save, to_toml_string, validate, MorseDataError,
    ValidationError, BUILTIN_NAMES,
};

#[test]
fn builtins_roundtrip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    for name in BUILTIN_NAMES {
        let data = builtin(name).unwrap();
        let path = dir.path().join(format!("{name}.toml"));
        save(&data, &path).unwrap();
        assert_eq!(load(&path).unwrap(), data);
        assert_eq!(from_toml_str(&to_toml_string(&data)).unwrap(), data);
    }
}

#[test]
fn mu_tables() {
    assert_eq!(builtin("t2_cos_dx").unwrap().mu(), vec![1, 2, 1]);
    assert_eq!(builtin("s2_height_area").unwrap().mu(), vec![1, 0, 1]);
}

#[test]
fn missing_file_is_io_error() {
    assert!(matches!(
        load("/nonexistent/dataset.toml"),
        Err(MorseDataError::Io { .. })
    ));
}

#[test]
fn grading_violation_names_pair() {
    let text = r#"
schema_version = 1
name = "bad"
manifold_dim = 2
ell = 1

[[points]]
id = "a"
index = 0

[[points]]
id = "b"
index = 0

[[boundary]]
to = "b"
from = "a"
coeff = "1"
"#;
    let err = validate(&from_toml_str(text).unwrap()).unwrap_err();
    assert!(matches!(err, ValidationError::GradingViolation { .. }));
    let msg = err.to_string();
    assert!(msg.contains("(b, a)"), "{msg}");
}

#[test]
fn unknown_fields_are_rejected() {
    let text = "schema_version = 1\nname = \"x\"\nmanifold_dim = 1\nell = 0\ncolour = 3\n";
    assert!(from_toml_str(text).is_err());
}
