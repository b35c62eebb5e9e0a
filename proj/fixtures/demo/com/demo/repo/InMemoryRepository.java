package com.demo.repo;

import com.demo.model.Identifiable;
import java.util.ArrayList;
import java.util.LinkedHashMap;
import java.util.List;
import java.util.Map;
import java.util.Optional;

public class InMemoryRepository<T extends Identifiable> implements Repository<T> {
    private final Map<String, T> items = new LinkedHashMap<>();
    private int writes;

    @Override
    public void save(T item) {
        if (item == null) {
            throw new IllegalArgumentException("item");
        }
        items.put(item.getId(), item);
        writes++;
    }

    @Override
    public Optional<T> findById(String id) {
        return Optional.ofNullable(items.get(id));
    }

    @Override
    public List<T> findAll() {
        return new ArrayList<>(items.values());
    }

    @Override
    public boolean delete(String id) {
        boolean removed = items.remove(id) != null;
        if (removed) {
            writes++;
        }
        return removed;
    }

    public int writes() {
        return writes;
    }
}
