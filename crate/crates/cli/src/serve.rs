//! Stateless HTTP render service.

use axum::body::Bytes;
use axum::http::{header, StatusCode};
use axum::response::{Html, IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use css4code_core::layout::FontMetrics;
use css4code_core::pipeline::{render, Diag, RenderRequest, Severity};
use serde_json::json;

const INDEX: &str = include_str!("playground.html");

pub fn app() -> Router {
    Router::new().route("/", get(|| async { Html(INDEX) })).route("/render", post(render_handler))
}

pub async fn serve(port: u16) -> anyhow::Result<()> {
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, app()).await?;
    Ok(())
}

/// The JSON body answered for a well-formed request.
pub fn render_json(req: &RenderRequest) -> serde_json::Value {
    let metrics = match FontMetrics::preset(&req.metrics) {
        Ok(m) => m,
        Err(e) => {
            let d = Diag { severity: Severity::Error, message: e.to_string(), line: 0, col: 0 };
            return json!({ "html": "", "diagnostics": [d] });
        }
    };
    let out = render(req, &metrics);
    let mut body = json!({ "html": out.html, "diagnostics": out.diagnostics });
    if req.debug {
        if let Some(l) = &out.layout {
            body["layout"] = l.to_json();
        }
    }
    body
}

async fn render_handler(body: Bytes) -> Response {
    let req: RenderRequest = match serde_json::from_slice(&body) {
        Ok(r) => r,
        Err(e) => return (StatusCode::BAD_REQUEST, format!("malformed request: {e}")).into_response(),
    };
    // Rendering is CPU-bound; keep it off the async workers.
    match tokio::task::spawn_blocking(move || render_json(&req)).await {
        Ok(v) => ([(header::CONTENT_TYPE, "application/json")], v.to_string()).into_response(),
        Err(e) => (StatusCode::INTERNAL_SERVER_ERROR, e.to_string()).into_response(),
    }
}
