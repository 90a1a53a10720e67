"""Service layer: pydantic wire schemas, handlers, and the FastAPI app."""
