from abc import ABC, abstractmethod


class BaseModel(ABC):
    def __init__(self, model_name):
        self.model_name = model_name

    @abstractmethod
    def pattern(self):
        """The partial correlation matrix this model specifies."""
        pass

    @abstractmethod
    def describe(self):
        pass

    def expected_completion(self):
        # Models without a closed form return None
        return None
