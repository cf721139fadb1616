//! HTTP API for the review UI.
//!
//! * `GET /api/items?reviewer=R` open items in the reviewer's order, with any existing verdict
//! * `POST /api/verdicts` `{item, reviewer, score, category?}`
//! * `GET /api/stats` agreement report over current verdicts

use std::future::Future;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};
use std::time::{SystemTime, UNIX_EPOCH};

use axum::extract::{Query, State};
use axum::http::StatusCode;
use axum::response::{Html, IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};

use super::{
    agreement_report, reviewer_order, AlignmentCategory, ItemKind, ItemStatus, Journal, Metric,
    ReviewItem, Verdict, VerdictError,
};

pub struct ReviewState {
    pub items: Vec<ReviewItem>,
    pub journal: Mutex<Journal>,
    pub seed: u64,
    pub metric: Metric,
    /// Directory holding a built UI; a placeholder page is served otherwise.
    pub static_dir: Option<PathBuf>,
}

impl ReviewState {
    pub fn new(items: Vec<ReviewItem>, journal: Journal, seed: u64, metric: Metric) -> Self {
        ReviewState {
            items,
            journal: Mutex::new(journal),
            seed,
            metric,
            static_dir: None,
        }
    }
}

#[derive(Debug, Deserialize)]
pub struct ItemsQuery {
    pub reviewer: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ItemView {
    pub id: String,
    pub kind: ItemKind,
    pub payload: serde_json::Value,
    pub existing_verdict: Option<Verdict>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VerdictRequest {
    pub item: String,
    pub reviewer: String,
    pub score: i64,
    #[serde(default)]
    pub category: Option<AlignmentCategory>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct Ack {
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

pub fn router(state: Arc<ReviewState>) -> Router {
    Router::new()
        .route("/", get(index))
        .route("/api/items", get(items))
        .route("/api/verdicts", post(verdicts))
        .route("/api/stats", get(stats))
        .with_state(state)
}

/// Serves until `shutdown` resolves, then flushes the journal.
pub async fn serve(
    listener: tokio::net::TcpListener,
    state: Arc<ReviewState>,
    shutdown: impl Future<Output = ()> + Send + 'static,
) -> std::io::Result<()> {
    axum::serve(listener, router(state.clone()))
        .with_graceful_shutdown(shutdown)
        .await?;
    state.journal.lock().expect("journal lock").flush()
}

const PLACEHOLDER: &str = "<!doctype html><html><head><meta charset=\"utf-8\"><title>ontolint review</title></head>\
<body><h1>ontolint review</h1><p>No UI bundle configured. The API is available under <code>/api/</code>.</p></body></html>";

async fn index(State(state): State<Arc<ReviewState>>) -> Html<String> {
    if let Some(dir) = &state.static_dir {
        if let Ok(text) = std::fs::read_to_string(dir.join("index.html")) {
            return Html(text);
        }
    }
    Html(PLACEHOLDER.to_string())
}

async fn items(State(state): State<Arc<ReviewState>>, Query(q): Query<ItemsQuery>) -> Json<Vec<ItemView>> {
    let journal = state.journal.lock().expect("journal lock");
    let mut out: Vec<ItemView> = state
        .items
        .iter()
        .filter(|i| i.status == ItemStatus::Open)
        .map(|i| ItemView {
            id: i.id.clone(),
            kind: i.kind,
            payload: i.payload.clone(),
            existing_verdict: journal.get(&i.id, &q.reviewer).cloned(),
        })
        .collect();
    drop(journal);
    reviewer_order(&mut out, state.seed, &q.reviewer);
    Json(out)
}

fn reject(status: StatusCode, msg: String) -> Response {
    (status, Json(Ack { ok: false, error: Some(msg) })).into_response()
}

async fn verdicts(State(state): State<Arc<ReviewState>>, Json(req): Json<VerdictRequest>) -> Response {
    let Ok(score) = i8::try_from(req.score) else {
        return reject(StatusCode::BAD_REQUEST, VerdictError::InvalidScore(req.score).to_string());
    };
    let timestamp = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0);
    let v = Verdict {
        item: req.item,
        reviewer: req.reviewer,
        score,
        category: req.category,
        timestamp,
    };
    let result = state.journal.lock().expect("journal lock").record(v);
    match result {
        Ok(()) => Json(Ack { ok: true, error: None }).into_response(),
        Err(e @ VerdictError::UnknownItem(_)) => reject(StatusCode::NOT_FOUND, e.to_string()),
        Err(e @ VerdictError::Io(_)) => reject(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()),
        Err(e) => reject(StatusCode::BAD_REQUEST, e.to_string()),
    }
}

async fn stats(State(state): State<Arc<ReviewState>>) -> Response {
    let journal = state.journal.lock().expect("journal lock");
    Json(agreement_report(journal.current(), state.metric)).into_response()
}
