//! axum wrapper around [`Explorer`].

use std::sync::Arc;

use axum::body::Body;
use axum::extract::State;
use axum::http::{header, Method, StatusCode, Uri};
use axum::response::Response;
use axum::Router;
use tokio::net::TcpListener;

use super::Explorer;

async fn dispatch(State(explorer): State<Arc<Explorer>>, method: Method, uri: Uri) -> Response {
    if method != Method::GET && method != Method::HEAD {
        return Response::builder()
            .status(StatusCode::METHOD_NOT_ALLOWED)
            .header(header::ALLOW, "GET, HEAD")
            .body(Body::empty())
            .expect("static response");
    }
    let reply = explorer.handle(uri.path(), uri.query());
    Response::builder()
        .status(reply.status)
        .header(header::CONTENT_TYPE, reply.content_type)
        .body(Body::from(reply.body))
        .expect("valid status and header")
}

pub fn router(explorer: Arc<Explorer>) -> Router {
    Router::new().fallback(dispatch).with_state(explorer)
}

/// Serves until the listener fails or `shutdown` resolves.
pub async fn serve(
    explorer: Arc<Explorer>,
    listener: TcpListener,
    shutdown: impl std::future::Future<Output = ()> + Send + 'static,
) -> std::io::Result<()> {
    axum::serve(listener, router(explorer))
        .with_graceful_shutdown(shutdown)
        .await
}
