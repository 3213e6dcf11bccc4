"""Classifiers: GINI tree, random forest, Gaussian NB, one-vs-rest perceptron."""

from eegaffect.classify.forest import ForestModel, ForestParams, fit_forest
from eegaffect.classify.naive_bayes import NbModel, fit_nb
from eegaffect.classify.perceptron import PerceptronModel, fit_perceptron
from eegaffect.classify.registry import (
    MODEL_KINDS,
    Classifier,
    Model,
    ModelSpec,
    ScaledModel,
)
from eegaffect.classify.serialize import load_model, load_scaled_model, save_model
from eegaffect.classify.tree import (
    DecisionTreeModel,
    Leaf,
    Split,
    TreeNode,
    TreeParams,
    fit_decision_tree,
    fit_tree,
    gini_impurity,
)

__all__ = [
    "MODEL_KINDS",
    "Classifier",
    "DecisionTreeModel",
    "ForestModel",
    "ForestParams",
    "Leaf",
    "Model",
    "ModelSpec",
    "NbModel",
    "PerceptronModel",
    "ScaledModel",
    "Split",
    "TreeNode",
    "TreeParams",
    "fit_decision_tree",
    "fit_forest",
    "fit_nb",
    "fit_perceptron",
    "fit_tree",
    "gini_impurity",
    "load_model",
    "load_scaled_model",
    "save_model",
]
