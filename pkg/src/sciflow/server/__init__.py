from .app import create_app
from .state import FilteredView, LruCache, ServerState

__all__ = ["FilteredView", "LruCache", "ServerState", "create_app"]
