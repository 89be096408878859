from setuptools import setup

setup(
    name="lpv",
    version="0.1.0",
    description="Verification conditions for correctness, completeness and termination of logic programs",
    py_modules=[
        "addedSecurity", "app", "config", "corpus", "database", "errors", "generate", "lpv", "models",
        "reports", "runner", "semantics", "sldnf", "specs", "stability", "syntax", "terms", "vcgen",
    ],
    python_requires=">=3.8",
    install_requires=[
        "flask",
        "flask-cors",
        "sqlalchemy",
        "psycopg2-binary",
        "python-dotenv",
        "gunicorn",
        "lark>=1.1",
    ],
    extras_require={"test": ["pytest"]},
    entry_points={"console_scripts": ["lpv=lpv:main"]},
)
