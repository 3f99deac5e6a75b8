"""
FastAPI application factory.
"""
from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from app.config import settings


def create_app() -> FastAPI:
    from app.routers import bistructures, families, magmas, rings

    app = FastAPI(
        title="Bialgebra Workbench",
        description="Finite magmas, bistructures, Smarandache detection, rings, designs and machines.",
        version="0.1.0",
    )

    app.add_middleware(
        CORSMiddleware,
        allow_origins=settings.cors_allow_origins_list,
        allow_credentials=True,
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.get("/healthz", tags=["health"])
    def healthz():
        return {"status": "ok"}

    app.include_router(families.router, prefix="/api")
    app.include_router(magmas.router, prefix="/api")
    app.include_router(bistructures.router, prefix="/api")
    app.include_router(rings.router, prefix="/api")
    return app
