package com.demo.repo;

import com.demo.model.Identifiable;
import java.util.List;
import java.util.Optional;

public interface Repository<T extends Identifiable> {
    void save(T item);

    Optional<T> findById(String id);

    List<T> findAll();

    boolean delete(String id);

    default int count() {
        return findAll().size();
    }
}
