use axum::body::Body;
use axum::http::{Method, Request, StatusCode};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use planeform::corpus::fixture;
use planeform_service::{router, AppState};

async fn call(method: Method, uri: &str, body: Option<Value>) -> (StatusCode, String) {
    let mut req = Request::builder().method(method).uri(uri);
    let body = match body {
        Some(v) => {
            req = req.header("content-type", "application/json");
            Body::from(v.to_string())
        }
        None => Body::empty(),
    };
    let resp = router(AppState::default())
        .oneshot(req.body(body).unwrap())
        .await
        .unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, String::from_utf8(bytes.to_vec()).unwrap())
}

fn parse(s: &str) -> Value {
    serde_json::from_str(s).unwrap()
}

fn assert_error(status: StatusCode, body: &str, expected: StatusCode, code: &str) {
    assert_eq!(status, expected, "{body}");
    let v = parse(body);
    assert_eq!(v["status"], expected.as_u16());
    assert_eq!(v["code"], code);
    assert!(v["message"].as_str().is_some_and(|m| !m.is_empty()));
}

#[tokio::test]
async fn lists_builtin_forms() {
    let (status, body) = call(Method::GET, "/api/forms", None).await;
    assert_eq!(status, StatusCode::OK);
    let v = parse(&body);
    let names: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["name"].as_str().unwrap())
        .collect();
    assert_eq!(
        names,
        [
            "fano-paper",
            "fano-octonion",
            "ds13-0.1.3.9-anchor_grouped",
            "ds13-0.1.3.9-translation_order"
        ]
    );
    assert_eq!(v[0]["point_count"], 7);
    assert_eq!(v[0]["stanza_shape"], json!([3, 3, 3, 3, 3, 3, 3]));
    assert_eq!(v[0]["stanzas"][0], json!([0, 1, 3]));
    assert_eq!(v[0]["source"]["kind"], "canonical_fano");
    assert_eq!(v[2]["stanza_shape"].as_array().unwrap().len(), 13);
}

#[tokio::test]
async fn scaffold_then_validate_round_trip() {
    let base: Vec<String> = (0..7).map(|i| format!("line number {i}")).collect();
    let (status, body) = call(
        Method::POST,
        "/api/scaffold",
        Some(json!({"form": "fano-paper", "base_lines": base})),
    )
    .await;
    assert_eq!(status, StatusCode::OK, "{body}");
    let v = parse(&body);
    let poem = v["poem"].as_str().unwrap();
    assert_eq!(poem.lines().filter(|l| !l.is_empty()).count(), 21);
    let classes = v["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 7);
    assert!(classes.iter().all(|c| c.as_array().unwrap().len() == 3));
    assert_eq!(classes[0][0], json!([0, 0]));

    let (status, body) = call(
        Method::POST,
        "/api/validate",
        Some(json!({"form": "fano-paper", "poem": poem, "mode": "exact"})),
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    let report = parse(&body);
    assert_eq!(report["overall_ok"], true);
    assert_eq!(report["mode"], "exact");
    assert_eq!(report["threshold"], 1.0);
}

#[tokio::test]
async fn scaffold_rejects_blank_and_missing_lines() {
    let mut base: Vec<String> = (0..7).map(|i| format!("l{i}")).collect();
    base[4] = "   ".into();
    let (status, body) = call(
        Method::POST,
        "/api/scaffold",
        Some(json!({"form": "fano-paper", "base_lines": base})),
    )
    .await;
    assert_error(status, &body, StatusCode::BAD_REQUEST, "bad_request");
    assert!(body.contains("point 4"));

    let (status, body) = call(
        Method::POST,
        "/api/scaffold",
        Some(json!({"form": "fano-paper", "base_lines": ["a", "b"]})),
    )
    .await;
    assert_error(status, &body, StatusCode::BAD_REQUEST, "bad_request");
}

#[tokio::test]
async fn unknown_form_is_404() {
    let (status, body) = call(
        Method::POST,
        "/api/scaffold",
        Some(json!({"form": "sonnet", "base_lines": []})),
    )
    .await;
    assert_error(status, &body, StatusCode::NOT_FOUND, "unknown_form");

    let (status, body) = call(
        Method::POST,
        "/api/validate",
        Some(json!({"form": "sonnet", "poem": "a", "mode": "exact"})),
    )
    .await;
    assert_error(status, &body, StatusCode::NOT_FOUND, "unknown_form");
}

#[tokio::test]
async fn validate_rejects_bad_mode_and_threshold() {
    let poem = fixture(3).unwrap().text;
    for req in [
        json!({"form": "fano-paper", "poem": poem, "mode": "loose"}),
        json!({"form": "fano-paper", "poem": poem, "mode": "fuzzy", "threshold": 1.5}),
        json!({"form": "fano-paper", "poem": poem, "mode": "exact", "threshold": 0.5}),
        json!({"form": "fano-paper", "poem": "", "mode": "exact"}),
    ] {
        let (status, body) = call(Method::POST, "/api/validate", Some(req)).await;
        assert_error(status, &body, StatusCode::BAD_REQUEST, "bad_request");
    }
    let (status, body) = call(Method::POST, "/api/validate", None).await;
    assert_error(status, &body, StatusCode::BAD_REQUEST, "bad_request");
}

#[tokio::test]
async fn validate_corpus_fuzzy() {
    for (n, ok) in [(3, true), (4, false), (5, true), (6, true)] {
        let poem = fixture(n).unwrap().text;
        let (status, body) = call(
            Method::POST,
            "/api/validate",
            Some(json!({"form": "fano-paper", "poem": poem, "mode": "fuzzy"})),
        )
        .await;
        assert_eq!(status, StatusCode::OK);
        let v = parse(&body);
        assert_eq!(v["overall_ok"], ok, "poem {n}");
        assert_eq!(v["threshold"], 0.6);
    }
}

#[tokio::test]
async fn plane_endpoint() {
    let (status, body) = call(Method::GET, "/api/plane/3", None).await;
    assert_eq!(status, StatusCode::OK);
    let v = parse(&body);
    assert_eq!(v["point_count"], 13);
    assert_eq!(v["lines"].as_array().unwrap().len(), 13);
    assert_eq!(v["origin"], json!({"kind": "field_plane", "q": 3}));

    for q in ["6", "10", "x"] {
        let (status, body) = call(Method::GET, &format!("/api/plane/{q}"), None).await;
        assert_error(status, &body, StatusCode::NOT_FOUND, "unsupported_order");
    }
}

#[tokio::test]
async fn octonion_table_endpoint() {
    let (status, body) = call(Method::GET, "/api/octonion/table", None).await;
    assert_eq!(status, StatusCode::OK);
    let v = parse(&body);
    assert_eq!(v["basis"].as_array().unwrap().len(), 8);
    let products = v["products"].as_array().unwrap();
    assert_eq!(products.len(), 8);
    assert_eq!(products[0][0], "+u");
    assert_eq!(products[1][1], "-u");
}

#[tokio::test]
async fn unknown_route_and_method() {
    let (status, body) = call(Method::GET, "/api/nothing", None).await;
    assert_error(status, &body, StatusCode::NOT_FOUND, "not_found");
    let (status, body) = call(Method::DELETE, "/api/forms", None).await;
    assert_error(
        status,
        &body,
        StatusCode::METHOD_NOT_ALLOWED,
        "method_not_allowed",
    );
}

#[tokio::test]
async fn cors_allows_any_origin() {
    let req = Request::builder()
        .uri("/api/forms")
        .header("origin", "http://localhost:5173")
        .body(Body::empty())
        .unwrap();
    let resp = router(AppState::default()).oneshot(req).await.unwrap();
    assert_eq!(resp.headers()["access-control-allow-origin"], "*");
}
