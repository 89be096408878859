import os

# tests never touch a real database
os.environ["DATABASE_URL"] = "sqlite://"


def pytest_addoption(parser):
    parser.addoption("--regen-golden", action="store_true", default=False,
                     help="rewrite corpus expected.txt files instead of comparing")
