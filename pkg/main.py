"""
Bialgebra Workbench HTTP server

启动命令:
    python main.py
    或
    uvicorn main:app --host 0.0.0.0 --port 8900 --reload
"""
import logging

import uvicorn

from app import create_app
from app.config import settings

# 配置日志
logging.basicConfig(
    level=getattr(logging, settings.log_level.upper(), logging.INFO),
    format="%(asctime)s │ %(levelname)-7s │ %(name)s │ %(message)s",
    datefmt="%H:%M:%S",
)

logger = logging.getLogger("bialgebra")

app = create_app()

if __name__ == "__main__":
    logger.info(f"Bialgebra Workbench http://{settings.host}:{settings.port}")
    logger.info(f"API docs: http://127.0.0.1:{settings.port}/docs")
    logger.info(f"caps: subsets={settings.subset_cap} poly_degree={settings.poly_degree_cap} syntactic={settings.syntactic_cap}")

    uvicorn.run(
        app,
        host=settings.host,
        port=settings.port,
        reload=False,
    )
