//! HTTP session service. Every session owns its graph; requests on one
//! session are serialised by its lock, different sessions run in parallel.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use bangbox::io::{GraphDocument, RuleDocument};
use bangbox::rule::Theory;
use bangbox::session::{AppliedStep, Session};
use bangbox::Error;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::Model;

struct AppState<T: Model> {
    theory: Theory<T>,
    sessions: Mutex<BTreeMap<String, Arc<Mutex<Session<T>>>>>,
    next: AtomicU64,
}

/// An error response with a JSON body `{"error": …}`.
pub struct ApiError(StatusCode, String);

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(json!({ "error": self.1 }))).into_response()
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::StaleWitness(_) => StatusCode::CONFLICT,
            _ => StatusCode::UNPROCESSABLE_ENTITY,
        };
        ApiError(status, e.to_string())
    }
}

type ApiResult = Result<Json<Value>, ApiError>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields, bound(deserialize = "L: Deserialize<'de> + Default"))]
struct CreateRequest<L> {
    graph: GraphDocument<L>,
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct MatchRequest {
    rule: String,
    #[serde(default)]
    reversed: bool,
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct ApplyRequest {
    rule: String,
    #[serde(default)]
    reversed: bool,
    match_index: usize,
    /// Hash of the graph the index refers to.
    #[serde(default)]
    graph_hash: Option<String>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct StepReply<'a> {
    step: &'a AppliedStep,
    hash: String,
    graph: Value,
}

/// The service for one theory.
pub fn router<T: Model>(theory: Theory<T>) -> Router {
    let state = Arc::new(AppState {
        theory,
        sessions: Mutex::new(BTreeMap::new()),
        next: AtomicU64::new(1),
    });
    Router::new()
        .route("/theory", get(theory_rules::<T>))
        .route("/sessions", post(create::<T>))
        .route("/sessions/{id}/graph", get(get_graph::<T>))
        .route("/sessions/{id}/matches", post(list_matches::<T>))
        .route("/sessions/{id}/apply", post(apply::<T>))
        .route("/sessions/{id}/undo", post(undo::<T>))
        .route("/sessions/{id}/redo", post(redo::<T>))
        .route("/sessions/{id}/history", get(history::<T>))
        .with_state(state)
}

fn session<T: Model>(state: &AppState<T>, id: &str) -> Result<Arc<Mutex<Session<T>>>, ApiError> {
    state
        .sessions
        .lock()
        .expect("session table lock")
        .get(id)
        .cloned()
        .ok_or_else(|| ApiError(StatusCode::NOT_FOUND, format!("no session {id}")))
}

fn graph_json<T: Model>(s: &Session<T>) -> Value {
    serde_json::to_value(GraphDocument::from_pattern(s.graph()).canonical()).expect("graph serialises")
}

fn graph_reply<T: Model>(s: &Session<T>) -> Value {
    json!({ "id": s.id, "hash": s.hash(), "graph": graph_json(s) })
}

async fn theory_rules<T: Model>(State(st): State<Arc<AppState<T>>>) -> Json<Value> {
    let rules: Vec<RuleDocument<T::Label>> = st.theory.rules().map(RuleDocument::from_rule).collect();
    Json(json!({ "name": st.theory.name, "rules": rules }))
}

async fn create<T: Model>(
    State(st): State<Arc<AppState<T>>>,
    Json(req): Json<CreateRequest<T::Label>>,
) -> Result<(StatusCode, Json<Value>), ApiError> {
    let g = req.graph.to_pattern()?;
    let id = format!("s{}", st.next.fetch_add(1, Ordering::SeqCst));
    let s = Session::new(id.clone(), st.theory.clone(), g);
    let reply = graph_reply(&s);
    st.sessions
        .lock()
        .expect("session table lock")
        .insert(id, Arc::new(Mutex::new(s)));
    Ok((StatusCode::CREATED, Json(reply)))
}

async fn get_graph<T: Model>(State(st): State<Arc<AppState<T>>>, Path(id): Path<String>) -> ApiResult {
    let s = session(&st, &id)?;
    let s = s.lock().expect("session lock");
    Ok(Json(graph_reply(&s)))
}

async fn list_matches<T: Model>(
    State(st): State<Arc<AppState<T>>>,
    Path(id): Path<String>,
    Json(req): Json<MatchRequest>,
) -> ApiResult {
    let s = session(&st, &id)?;
    let mut s = s.lock().expect("session lock");
    let ms = s.list_matches(&req.rule, req.reversed)?;
    let entries: Vec<Value> = ms
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let mut v = serde_json::to_value(m).expect("match serialises");
            v["index"] = i.into();
            v
        })
        .collect();
    Ok(Json(json!({
        "rule": req.rule,
        "reversed": req.reversed,
        "graphHash": s.hash(),
        "matches": entries,
    })))
}

fn step_reply<T: Model>(s: &Session<T>, step: &AppliedStep) -> Json<Value> {
    Json(
        serde_json::to_value(StepReply {
            step,
            hash: s.hash(),
            graph: graph_json(s),
        })
        .expect("reply serialises"),
    )
}

async fn apply<T: Model>(
    State(st): State<Arc<AppState<T>>>,
    Path(id): Path<String>,
    Json(req): Json<ApplyRequest>,
) -> ApiResult {
    let s = session(&st, &id)?;
    let mut s = s.lock().expect("session lock");
    let step = s.apply(&req.rule, req.reversed, req.match_index, req.graph_hash.as_deref())?;
    Ok(step_reply(&s, &step))
}

async fn undo<T: Model>(State(st): State<Arc<AppState<T>>>, Path(id): Path<String>) -> ApiResult {
    let s = session(&st, &id)?;
    let mut s = s.lock().expect("session lock");
    let step = s.undo()?;
    Ok(step_reply(&s, &step))
}

async fn redo<T: Model>(State(st): State<Arc<AppState<T>>>, Path(id): Path<String>) -> ApiResult {
    let s = session(&st, &id)?;
    let mut s = s.lock().expect("session lock");
    let step = s.redo()?;
    Ok(step_reply(&s, &step))
}

async fn history<T: Model>(State(st): State<Arc<AppState<T>>>, Path(id): Path<String>) -> ApiResult {
    let s = session(&st, &id)?;
    let s = s.lock().expect("session lock");
    Ok(Json(json!({
        "id": s.id,
        "initialHash": bangbox::io::pattern_hash(s.initial()),
        "hash": s.hash(),
        "steps": s.history(),
        "redoable": s.can_redo(),
    })))
}
